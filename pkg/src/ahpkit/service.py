"""HTTP elicitation service.

A session wraps one project: experts submit pairwise judgments one at a
time (upper-triangle pairs on the 1/9..9 scale, reciprocals implied) and
get live completeness, consistency and hotspot feedback per node. Once
every node is complete, expert matrices are aggregated and the hierarchy
evaluated; the cached result powers what-if perturbations and report
export until the next mutation invalidates it.

Concurrency: optimistic per-session revisions. Every mutation carries the
revision the client last saw and bumps it by one; a mismatch is rejected
with 409. Mutations on one session are serialized behind a lock; sessions
are snapshotted to an embedded sqlite store on every mutation, so a
restart restores all sessions (pass ":memory:" for tests).

Matrices preloaded from the project document (consensus ``matrices`` or
per-expert ``experts`` maps) are kept as full m x m buffers: published
lower triangles differ from 1/a_ij in the last printed decimal, and
evaluation must reproduce CLI results on the same file bit for bit.
"""

from __future__ import annotations

import json
import sqlite3
import threading
import uuid
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse

from .aggregate import ARITHMETIC_MEAN, GEOMETRIC_MEAN, aggregate_judgments
from .consistency import RiTable, consistency_report
from .errors import (
    AhpError,
    BadPairError,
    IncompleteNodeError,
    InvalidProjectError,
    NoEvaluationError,
    NonPositiveEntryError,
    ProjectError,
    ReciprocityViolationError,
    RootNodeError,
    ScaleOutOfRangeError,
    StaleRevisionError,
    UnknownNodeError,
    UnknownSessionError,
    WeightOutOfRangeError,
)
from .evaluate import (
    EvaluationResult,
    evaluate,
    inconsistency_hotspots,
    sensitivity,
)
from .hierarchy import Hierarchy, attach_matrix
from .matrix import nearest_scale_value, validate_matrix
from .project import ProjectDocument, parse_project
from .report import export_report
from .weights import geometric_mean_weights

CONSENSUS_EXPERT = "consensus"

STATUS_INCOMPLETE = "incomplete"
STATUS_COMPLETE = "complete"
STATUS_CONSISTENT = "consistent"
STATUS_INCONSISTENT = "inconsistent"


class SessionStore:
    """Embedded key-value snapshot store for sessions (sqlite-backed)."""

    def __init__(self, path: str = ":memory:"):
        self.path = path
        self._conn = sqlite3.connect(path, check_same_thread=False)
        self._lock = threading.Lock()
        with self._lock:
            self._conn.execute(
                "CREATE TABLE IF NOT EXISTS sessions "
                "(id TEXT PRIMARY KEY, body TEXT NOT NULL)"
            )
            self._conn.commit()

    def save(self, session_id: str, body: dict):
        payload = json.dumps(body)
        with self._lock:
            self._conn.execute(
                "INSERT OR REPLACE INTO sessions (id, body) VALUES (?, ?)",
                (session_id, payload),
            )
            self._conn.commit()

    def load_all(self) -> dict[str, dict]:
        with self._lock:
            rows = self._conn.execute("SELECT id, body FROM sessions").fetchall()
        return {sid: json.loads(body) for sid, body in rows}

    def close(self):
        with self._lock:
            self._conn.close()


@dataclass
class Session:
    session_id: str
    project: ProjectDocument
    hierarchy: Hierarchy
    revision: int = 0
    # expert -> node id -> m x m ndarray with NaN for unknown entries
    buffers: dict = field(default_factory=dict)
    # audit record of live submissions: (expert, node, i, j) -> value
    judgments: dict = field(default_factory=dict)
    cache: dict | None = None  # {"revision", "method", "result"}
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    # -- construction --------------------------------------------------------

    @classmethod
    def create(cls, project: ProjectDocument, session_id: str | None = None):
        session = cls(
            session_id=session_id or uuid.uuid4().hex,
            project=project,
            hierarchy=project.hierarchy,
        )
        tol = project.reciprocity_tol
        preload = dict(project.experts)
        if not preload and project.matrices:
            preload = {CONSENSUS_EXPERT: project.matrices}
        for expert, per_node in preload.items():
            for node_id, entries in per_node.items():
                m = int(round(len(entries) ** 0.5))
                rows = [list(entries[r * m : (r + 1) * m]) for r in range(m)]
                node = session.hierarchy.node(node_id)
                if len(node.children) != m:
                    raise InvalidProjectError(
                        f"matrix for node {node_id!r} has order {m} but the node "
                        f"has {len(node.children)} children",
                        node=node_id, expert=expert,
                    )
                try:
                    validate_matrix(rows, reciprocity_tol=tol)
                except AhpError as exc:
                    raise InvalidProjectError(
                        f"matrix for node {node_id!r} is invalid: {exc}",
                        node=node_id, expert=expert, code_inner=exc.code,
                    ) from exc
                session.buffers.setdefault(expert, {})[node_id] = np.asarray(
                    rows, dtype=float
                )
        return session

    # -- geometry ------------------------------------------------------------

    def _pairs_total(self, node_id: str) -> int:
        m = len(self.hierarchy.node(node_id).children)
        return m * (m - 1) // 2

    def _buffer(self, expert: str, node_id: str) -> np.ndarray:
        m = len(self.hierarchy.node(node_id).children)
        per = self.buffers.setdefault(expert, {})
        if node_id not in per:
            buf = np.full((m, m), np.nan)
            np.fill_diagonal(buf, 1.0)
            per[node_id] = buf
        return per[node_id]

    def _pairs_done(self, expert: str, node_id: str) -> int:
        per = self.buffers.get(expert, {})
        if node_id not in per:
            return 0
        buf = per[node_id]
        iu = np.triu_indices(buf.shape[0], k=1)
        return int(np.sum(~np.isnan(buf[iu])))

    def _complete(self, expert: str, node_id: str) -> bool:
        return self._pairs_done(expert, node_id) == self._pairs_total(node_id)

    def expert_ids(self) -> list[str]:
        return sorted(self.buffers)

    # -- node status ---------------------------------------------------------

    def node_status(self, node_id: str, ri_table: RiTable) -> str:
        if self._pairs_total(node_id) == 0:
            return STATUS_COMPLETE  # single child: nothing to elicit
        experts = self.expert_ids()
        if not experts or any(not self._complete(e, node_id) for e in experts):
            return STATUS_INCOMPLETE
        for expert in experts:
            matrix = validate_matrix(
                self.buffers[expert][node_id],
                reciprocity_tol=self.project.reciprocity_tol,
            )
            if not consistency_report(matrix, ri_table).passed:
                return STATUS_INCONSISTENT
        return STATUS_CONSISTENT

    # -- mutations -----------------------------------------------------------

    def submit(self, expert: str, node_id: str, i: int, j: int, value: float,
               revision: int, ri_table: RiTable) -> dict:
        if revision != self.revision:
            raise StaleRevisionError(
                f"revision {revision} is stale (current {self.revision})",
                supplied=revision, current=self.revision,
            )
        node = self.hierarchy.node(node_id)
        m = len(node.children)
        if m < 2:
            raise BadPairError(
                f"node {node_id!r} has {m} children; no pairs to judge",
                node=node_id,
            )
        valid_pair = (
            isinstance(i, int) and isinstance(j, int)
            and not isinstance(i, bool) and not isinstance(j, bool)
            and 0 <= i < j < m
        )
        if not valid_pair:
            raise BadPairError(
                f"pair ({i}, {j}) is not an upper-triangle pair for order {m}",
                node=node_id, i=i, j=j, order=m,
            )
        try:
            numeric = float(value)
        except (TypeError, ValueError):
            raise ScaleOutOfRangeError(
                f"value {value!r} is not a number on the 1/9..9 judgment scale",
            ) from None
        snapped = nearest_scale_value(numeric)
        if snapped is None:
            raise ScaleOutOfRangeError(
                f"value {value!r} is not on the 1/9..9 judgment scale",
                value=numeric,
            )
        buf = self._buffer(expert, node_id)
        buf[i, j] = snapped
        buf[j, i] = 1.0 / snapped
        self.judgments[(expert, node_id, i, j)] = snapped
        self.revision += 1
        self.cache = None

        done = self._pairs_done(expert, node_id)
        total = self._pairs_total(node_id)
        feedback = {
            "revision": self.revision,
            "expert": expert,
            "node": node_id,
            "pairs_done": done,
            "pairs_total": total,
            "status": STATUS_INCOMPLETE,
            "report": None,
            "hotspots": None,
        }
        if done == total:
            matrix = validate_matrix(
                buf, reciprocity_tol=self.project.reciprocity_tol
            )
            wv = geometric_mean_weights(matrix)
            rep = consistency_report(matrix, ri_table, weights=wv)
            feedback["status"] = (
                STATUS_CONSISTENT if rep.passed else STATUS_INCONSISTENT
            )
            feedback["report"] = _report_to_dict(rep)
            feedback["hotspots"] = [
                [i_, j_, eps] for i_, j_, eps in inconsistency_hotspots(matrix, wv, 3)
            ]
        return feedback

    def aggregate_and_evaluate(self, method: str, ri_table: RiTable) -> EvaluationResult:
        if method not in (GEOMETRIC_MEAN, ARITHMETIC_MEAN):
            raise InvalidProjectError(f"unknown aggregation method {method!r}")
        experts = self.expert_ids()
        if not experts:
            raise IncompleteNodeError(
                "no expert judgments in this session", missing=["*"]
            )
        h = self.hierarchy
        tol = self.project.reciprocity_tol
        for node in h.internal_nodes():
            total = self._pairs_total(node.id)
            if total == 0:
                continue  # single-child node needs no matrix
            per_expert = []
            missing: list[list] = []
            for expert in experts:
                if not self._complete(expert, node.id):
                    buf = self.buffers.get(expert, {}).get(node.id)
                    if buf is None:
                        missing.append([expert, "all pairs"])
                    else:
                        iu = np.triu_indices(buf.shape[0], k=1)
                        holes = np.isnan(buf[iu])
                        missing.extend(
                            [expert, int(a), int(b)]
                            for a, b, hole in zip(iu[0], iu[1], holes)
                            if hole
                        )
                    continue
                per_expert.append(
                    validate_matrix(
                        self.buffers[expert][node.id], reciprocity_tol=tol
                    )
                )
            if missing:
                raise IncompleteNodeError(
                    f"node {node.id!r} is missing judgments", node=node.id,
                    missing=missing,
                )
            h = attach_matrix(
                h, node.id,
                aggregate_judgments(per_expert, method, reciprocity_tol=tol),
            )
        result = evaluate(h, ri_table)
        self.cache = {"revision": self.revision, "method": method, "result": result}
        return result

    def cached_result(self) -> EvaluationResult:
        if self.cache is None or self.cache["revision"] != self.revision:
            raise NoEvaluationError(
                "no evaluation cached at the current revision; POST .../evaluate first",
                revision=self.revision,
            )
        return self.cache["result"]

    # -- persistence ---------------------------------------------------------

    def snapshot(self) -> dict:
        return {
            "project": self.project.to_jsonable(),
            "revision": self.revision,
            "buffers": {
                expert: {
                    node_id: [
                        [None if np.isnan(x) else float(x) for x in row]
                        for row in buf
                    ]
                    for node_id, buf in per.items()
                }
                for expert, per in self.buffers.items()
            },
            "judgments": [
                [e, n, i, j, v] for (e, n, i, j), v in self.judgments.items()
            ],
        }

    @classmethod
    def restore(cls, session_id: str, body: dict) -> "Session":
        project = parse_project(json.dumps(body["project"]))
        session = cls(
            session_id=session_id,
            project=project,
            hierarchy=project.hierarchy,
            revision=int(body["revision"]),
        )
        for expert, per in body.get("buffers", {}).items():
            for node_id, rows in per.items():
                buf = np.asarray(
                    [[np.nan if x is None else float(x) for x in row] for row in rows]
                )
                session.buffers.setdefault(expert, {})[node_id] = buf
        for e, n, i, j, v in body.get("judgments", []):
            session.judgments[(e, n, int(i), int(j))] = float(v)
        return session

    def state(self, ri_table: RiTable) -> dict:
        nodes = []
        for node in self.hierarchy.internal_nodes():
            total = self._pairs_total(node.id)
            nodes.append({
                "id": node.id,
                "label": node.label,
                "children": [c.id for c in node.children],
                "pairs_total": total,
                "per_expert": {
                    expert: self._pairs_done(expert, node.id)
                    for expert in self.expert_ids()
                },
                "status": self.node_status(node.id, ri_table),
            })
        return {
            "session_id": self.session_id,
            "revision": self.revision,
            "tolerance": self.project.tolerance,
            "experts": self.expert_ids(),
            "nodes": nodes,
            "has_evaluation": (
                self.cache is not None
                and self.cache["revision"] == self.revision
            ),
        }


_HTTP_STATUS = {
    UnknownSessionError: 404,
    UnknownNodeError: 404,
    BadPairError: 400,
    ScaleOutOfRangeError: 400,
    WeightOutOfRangeError: 400,
    RootNodeError: 400,
    StaleRevisionError: 409,
    IncompleteNodeError: 409,
    NoEvaluationError: 409,
    InvalidProjectError: 422,
    ProjectError: 422,
    ReciprocityViolationError: 422,
    NonPositiveEntryError: 422,
}


def _status_for(exc: AhpError) -> int:
    for klass in type(exc).__mro__:
        if klass in _HTTP_STATUS:
            return _HTTP_STATUS[klass]
    return 422


def _report_to_dict(rep) -> dict:
    return {
        "mu_max": rep.mu_max, "ci": rep.ci, "ri": rep.ri, "cr": rep.cr,
        "passed": rep.passed, "order": rep.order,
    }


def _table_to_dict(table) -> list[dict]:
    return [
        {
            "leaf": r.leaf_id, "label": r.label, "parent": r.parent_id,
            "local": r.local_weight, "global": r.global_weight,
        }
        for r in table
    ]


def create_app(
    store: SessionStore | None = None,
    ri_table: RiTable | None = None,
    ui_dir: str | None = None,
) -> FastAPI:
    store = store or SessionStore(":memory:")
    table = ri_table or RiTable.default()
    app = FastAPI(title="ahpkit elicitation service")
    sessions: dict[str, Session] = {
        sid: Session.restore(sid, body) for sid, body in store.load_all().items()
    }
    registry_lock = threading.Lock()

    def get_session(session_id: str) -> Session:
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(
                f"no session {session_id!r}", session=session_id
            )
        return session

    @app.exception_handler(AhpError)
    async def ahp_error_handler(_request: Request, exc: AhpError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={
                "code": exc.code,
                "message": str(exc),
                "details": json.loads(json.dumps(exc.details, default=str)),
            },
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/api/v1/sessions", status_code=201)
    async def create_session(request: Request):
        raw = await request.body()
        try:
            project = parse_project(raw)
        except ProjectError as exc:
            raise InvalidProjectError(
                f"invalid project document: {exc}", code_inner=exc.code
            ) from exc
        session = Session.create(project)
        with registry_lock:
            sessions[session.session_id] = session
        store.save(session.session_id, session.snapshot())
        return {"session_id": session.session_id, "revision": session.revision}

    @app.get("/api/v1/sessions/{session_id}")
    def session_state(session_id: str):
        return get_session(session_id).state(table)

    @app.put("/api/v1/sessions/{session_id}/judgments")
    async def put_judgment(session_id: str, request: Request):
        body = await _json_body(request)
        for key in ("expert", "node", "i", "j", "value", "revision"):
            if key not in body:
                raise BadPairError(f"missing field {key!r} in judgment body", field=key)
        session = get_session(session_id)
        with session.lock:
            feedback = session.submit(
                expert=str(body["expert"]),
                node_id=str(body["node"]),
                i=body["i"],
                j=body["j"],
                value=body["value"],
                revision=body["revision"],
                ri_table=table,
            )
            store.save(session.session_id, session.snapshot())
        return feedback

    @app.post("/api/v1/sessions/{session_id}/evaluate")
    async def evaluate_session(session_id: str, request: Request):
        body = await _json_body(request)
        method = body.get("method", GEOMETRIC_MEAN)
        session = get_session(session_id)
        with session.lock:
            result = session.aggregate_and_evaluate(method, table)
        return {
            "session_id": session_id,
            "revision": session.revision,
            "method": method,
            "result": result.to_dict(),
        }

    @app.post("/api/v1/sessions/{session_id}/what-if")
    async def what_if(session_id: str, request: Request):
        body = await _json_body(request)
        for key in ("node", "weight"):
            if key not in body:
                raise WeightOutOfRangeError(f"missing field {key!r} in what-if body")
        session = get_session(session_id)
        with session.lock:
            result = session.cached_result()
        try:
            weight = float(body["weight"])
        except (TypeError, ValueError):
            raise WeightOutOfRangeError(
                f"weight must be a number, got {body['weight']!r}"
            ) from None
        perturbed = sensitivity(result, str(body["node"]), weight)
        return {
            "session_id": session_id,
            "revision": session.revision,
            "node": body["node"],
            "weight": weight,
            "ranking": _table_to_dict(perturbed),
        }

    @app.get("/api/v1/sessions/{session_id}/report")
    def session_report(session_id: str, format: str = Query("csv")):
        if format not in ("csv", "text"):
            raise InvalidProjectError(
                f"unsupported report format {format!r}", format=format
            )
        session = get_session(session_id)
        with session.lock:
            result = session.cached_result()
        payload = export_report(result, format)
        media = "text/csv" if format == "csv" else "text/plain"
        return Response(content=payload, media_type=f"{media}; charset=utf-8")

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    else:
        @app.get("/")
        def index():
            return {
                "service": "ahpkit elicitation service",
                "api": "/api/v1",
                "health": "/healthz",
            }

    return app


async def _json_body(request: Request) -> dict:
    try:
        body = json.loads(await request.body())
    except json.JSONDecodeError as exc:
        raise InvalidProjectError(f"request body is not valid JSON: {exc}") from exc
    if not isinstance(body, dict):
        raise InvalidProjectError("request body must be a JSON object")
    return body
