/**
 * Elicitation wizard state: walks a node's pairwise prompts in a fixed
 * row-major upper-triangle order, round-trips every answer through the
 * service, and surfaces the live feedback (completeness, consistency,
 * hotspot pairs) that comes back.
 *
 * At most one mutation is in flight per session; a stale-revision
 * conflict flips `needsReload` so the page can prompt for a refresh
 * instead of silently overwriting someone else's judgment.
 */

import {
  ApiClient,
  ApiError,
  JudgmentFeedback,
  SessionNode,
  SessionState,
} from "./api.js";
import { isScaleValue } from "./scale.js";

export interface PairPrompt {
  node: string;
  i: number;
  j: number;
  leftId: string;
  rightId: string;
  /** 1-based position in the node's fixed pair order. */
  position: number;
  total: number;
}

/** Row-major upper-triangle pair order: (0,1), (0,2), ..., (m-2,m-1). */
export function pairSequence(order: number): Array<[number, number]> {
  const pairs: Array<[number, number]> = [];
  for (let i = 0; i < order; i++) {
    for (let j = i + 1; j < order; j++) {
      pairs.push([i, j]);
    }
  }
  return pairs;
}

export class ElicitationWizard {
  session: SessionState | null = null;
  nodeId: string | null = null;
  /** Answers this client has sent, keyed "i-j", per node. */
  private answered = new Map<string, Map<string, number>>();
  private cursor = 0;
  lastFeedback: JudgmentFeedback | null = null;
  lastError: ApiError | null = null;
  needsReload = false;
  private inFlight = false;

  constructor(
    private readonly api: ApiClient,
    readonly sessionId: string,
    readonly expert: string,
  ) {}

  get busy(): boolean {
    return this.inFlight;
  }

  async load(): Promise<SessionState> {
    this.session = await this.api.getSession(this.sessionId);
    this.needsReload = false;
    return this.session;
  }

  node(nodeId: string): SessionNode {
    const hit = this.session?.nodes.find((n) => n.id === nodeId);
    if (!hit) {
      throw new Error(`unknown node ${nodeId}`);
    }
    return hit;
  }

  /** Choose the node being elicited and restart its prompt cursor. */
  selectNode(nodeId: string): void {
    this.node(nodeId);
    this.nodeId = nodeId;
    this.cursor = 0;
    this.lastFeedback = null;
  }

  pairsDone(nodeId: string): number {
    return this.answered.get(nodeId)?.size ?? 0;
  }

  /** The next unanswered prompt in fixed order, or null when complete. */
  nextPrompt(): PairPrompt | null {
    if (!this.nodeId) return null;
    const node = this.node(this.nodeId);
    const sequence = pairSequence(node.children.length);
    const done = this.answered.get(this.nodeId) ?? new Map<string, number>();
    for (let k = 0; k < sequence.length; k++) {
      const idx = (this.cursor + k) % sequence.length;
      const [i, j] = sequence[idx]!;
      if (!done.has(`${i}-${j}`)) {
        return this.prompt(node, i, j, idx, sequence.length);
      }
    }
    return null;
  }

  /** One-click hotspot revisit: jump the cursor to a specific pair. */
  revisit(i: number, j: number): PairPrompt {
    if (!this.nodeId) throw new Error("no node selected");
    const node = this.node(this.nodeId);
    const sequence = pairSequence(node.children.length);
    const idx = sequence.findIndex(([a, b]) => a === i && b === j);
    if (idx < 0) throw new Error(`pair (${i}, ${j}) is not valid for ${this.nodeId}`);
    this.cursor = idx;
    this.answered.get(this.nodeId)?.delete(`${i}-${j}`);
    return this.prompt(node, i, j, idx, sequence.length);
  }

  private prompt(
    node: SessionNode,
    i: number,
    j: number,
    idx: number,
    total: number,
  ): PairPrompt {
    return {
      node: node.id,
      i,
      j,
      leftId: node.children[i]!,
      rightId: node.children[j]!,
      position: idx + 1,
      total,
    };
  }

  /**
   * Submit the current prompt's judgment. Values are restricted to the
   * selector's scale; the returned feedback is stored verbatim.
   */
  async submit(prompt: PairPrompt, value: number): Promise<JudgmentFeedback> {
    if (!isScaleValue(value)) {
      throw new Error(`value ${value} is not on the judgment scale`);
    }
    if (this.inFlight) {
      throw new Error("a judgment is already in flight for this session");
    }
    if (!this.session) {
      throw new Error("session not loaded");
    }
    this.inFlight = true;
    try {
      const feedback = await this.api.submitJudgment(this.sessionId, {
        expert: this.expert,
        node: prompt.node,
        i: prompt.i,
        j: prompt.j,
        value,
        revision: this.session.revision,
      });
      this.session.revision = feedback.revision;
      let done = this.answered.get(prompt.node);
      if (!done) {
        done = new Map();
        this.answered.set(prompt.node, done);
      }
      done.set(`${prompt.i}-${prompt.j}`, value);
      this.cursor = (prompt.position - 1 + 1) % Math.max(prompt.total, 1);
      this.lastFeedback = feedback;
      this.lastError = null;
      const nodeState = this.node(prompt.node);
      nodeState.status = feedback.status;
      nodeState.per_expert[this.expert] = feedback.pairs_done;
      return feedback;
    } catch (err) {
      if (err instanceof ApiError) {
        this.lastError = err;
        if (err.isStaleRevision) {
          this.needsReload = true;
        }
        throw err;
      }
      throw err;
    } finally {
      this.inFlight = false;
    }
  }
}
