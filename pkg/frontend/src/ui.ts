/**
 * Page wiring: connects the wizard, the view store and the DOM. All
 * numbers on screen come from service payloads held in those two
 * objects; this module only lays them out.
 */

import { ApiClient, ApiError, JudgmentFeedback, SessionNode } from "./api.js";
import { crBadge, renderLocalBars, renderRankingBars, statusBadge } from "./charts.js";
import { SCALE_OPTIONS, formatWeight, scaleLabel } from "./scale.js";
import { SessionViewStore } from "./store.js";
import { ElicitationWizard, PairPrompt } from "./wizard.js";

export class ElicitationPage {
  private wizard: ElicitationWizard;
  private store: SessionViewStore;
  private currentPrompt: PairPrompt | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
    readonly sessionId: string,
    expert: string,
  ) {
    this.wizard = new ElicitationWizard(api, sessionId, expert);
    this.store = new SessionViewStore(api, sessionId);
  }

  async start(): Promise<void> {
    this.root.innerHTML = `
      <header>
        <h1>Pairwise elicitation</h1>
        <div id="session-meta" class="muted"></div>
      </header>
      <div id="toast" class="toast hidden"></div>
      <div id="reload-prompt" class="toast warn hidden">
        Someone else updated this session.
        <button id="reload-btn">Reload</button>
      </div>
      <main class="columns">
        <section class="panel">
          <h2>Nodes</h2>
          <ul id="node-list" class="node-list"></ul>
          <button id="evaluate-btn">Aggregate &amp; evaluate</button>
          <a id="report-link" class="muted" target="_blank">CSV report</a>
        </section>
        <section class="panel">
          <h2>Judgment</h2>
          <div id="prompt-box"></div>
          <div id="feedback-box"></div>
        </section>
        <section class="panel">
          <h2>Ranking</h2>
          <div id="whatif-box"></div>
          <div id="ranking-box" class="bars"></div>
        </section>
      </main>`;
    await this.wizard.load();
    this.renderSession();
  }

  private el<T extends HTMLElement>(id: string): T {
    return this.root.querySelector(`#${id}`) as T;
  }

  private toast(message: string, warn = false): void {
    const box = this.el<HTMLDivElement>("toast");
    box.textContent = message;
    box.classList.toggle("warn", warn);
    box.classList.remove("hidden");
    setTimeout(() => box.classList.add("hidden"), 4000);
  }

  private renderSession(): void {
    const session = this.wizard.session;
    if (!session) return;
    this.el("session-meta").textContent =
      `session ${session.session_id} · revision ${session.revision}`;
    this.el<HTMLAnchorElement>("report-link").href = this.api.reportUrl(
      session.session_id,
      "csv",
    );

    const list = this.el<HTMLUListElement>("node-list");
    list.replaceChildren();
    for (const node of session.nodes) {
      if (node.pairs_total === 0) continue;
      const item = document.createElement("li");
      const button = document.createElement("button");
      button.className = "node-select";
      button.textContent = `${node.id} · ${node.label}`;
      button.addEventListener("click", () => {
        this.wizard.selectNode(node.id);
        this.renderPrompt();
      });
      const progress = document.createElement("span");
      progress.className = "muted";
      const done = this.wizard.pairsDone(node.id);
      progress.textContent = ` ${done}/${node.pairs_total} `;
      item.append(button, progress, statusBadge(node.status));
      list.appendChild(item);
    }

    this.el<HTMLButtonElement>("evaluate-btn").onclick = () => {
      void this.evaluate();
    };
    this.el<HTMLButtonElement>("reload-btn").onclick = () => {
      void this.reload();
    };
  }

  private async reload(): Promise<void> {
    await this.wizard.load();
    this.el("reload-prompt").classList.add("hidden");
    this.renderSession();
    this.renderPrompt();
  }

  private renderPrompt(): void {
    const box = this.el<HTMLDivElement>("prompt-box");
    const prompt = this.wizard.nextPrompt();
    this.currentPrompt = prompt;
    box.replaceChildren();
    if (!this.wizard.nodeId) {
      box.textContent = "Select a node to start judging.";
      return;
    }
    if (!prompt) {
      box.textContent = "All pairs answered for this node.";
      return;
    }
    const node = this.wizard.node(prompt.node);
    const heading = document.createElement("p");
    heading.innerHTML =
      `Pair ${prompt.position}/${prompt.total} in <strong>${prompt.node}</strong>: ` +
      `how important is <strong>${prompt.leftId}</strong> compared to ` +
      `<strong>${prompt.rightId}</strong>?`;
    box.appendChild(heading);

    const selector = document.createElement("div");
    selector.className = "scale-selector";
    for (const option of SCALE_OPTIONS) {
      const choice = document.createElement("button");
      choice.className = "scale-option";
      choice.textContent = option.label;
      choice.title = option.description;
      choice.addEventListener("click", () => {
        void this.submit(prompt, option.value);
      });
      selector.appendChild(choice);
    }
    box.appendChild(selector);

    const locals = this.store.weights[prompt.node];
    if (locals) {
      const bars = document.createElement("div");
      bars.className = "bars";
      renderLocalBars(bars, node.children, locals);
      box.appendChild(bars);
    }
  }

  private async submit(prompt: PairPrompt, value: number): Promise<void> {
    try {
      const feedback = await this.wizard.submit(prompt, value);
      this.renderFeedback(feedback);
      this.renderSession();
      this.renderPrompt();
    } catch (err) {
      if (err instanceof ApiError && err.isStaleRevision) {
        this.el("reload-prompt").classList.remove("hidden");
        return;
      }
      this.toast(
        `submission failed: ${err instanceof Error ? err.message : String(err)} (retry)`,
        true,
      );
      this.renderPrompt(); // same prompt again: inline retry
    }
  }

  private renderFeedback(feedback: JudgmentFeedback): void {
    const box = this.el<HTMLDivElement>("feedback-box");
    box.replaceChildren();
    const line = document.createElement("p");
    line.textContent =
      `${feedback.node}: ${feedback.pairs_done}/${feedback.pairs_total} pairs · `;
    box.appendChild(line);
    if (feedback.report) {
      line.appendChild(crBadge(feedback.report));
      if (!feedback.report.passed && feedback.hotspots) {
        const hint = document.createElement("p");
        hint.textContent = "Most contradictory pairs:";
        box.appendChild(hint);
        const node = this.wizard.node(feedback.node);
        for (const [i, j, eps] of feedback.hotspots) {
          const row = document.createElement("div");
          const revisit = document.createElement("button");
          revisit.className = "revisit";
          revisit.textContent =
            `revisit ${node.children[i]} vs ${node.children[j]} ` +
            `(off by ${scaleLabel(eps)})`;
          revisit.addEventListener("click", () => {
            this.wizard.revisit(i, j);
            this.renderPrompt();
          });
          row.appendChild(revisit);
          box.appendChild(row);
        }
      }
    }
  }

  private async evaluate(): Promise<void> {
    try {
      await this.store.evaluate();
    } catch (err) {
      this.toast(
        `evaluation failed: ${err instanceof Error ? err.message : String(err)}`,
        true,
      );
      return;
    }
    this.renderRanking();
    this.renderWhatIf();
  }

  private renderRanking(): void {
    const box = this.el<HTMLDivElement>("ranking-box");
    if (this.store.ranking) {
      renderRankingBars(box, this.store.ranking);
    }
  }

  private renderWhatIf(): void {
    const box = this.el<HTMLDivElement>("whatif-box");
    box.replaceChildren();
    const session = this.wizard.session;
    if (!session || !this.store.hasEvaluation) return;

    // one slider per criterion directly under the goal (nodes arrive in
    // pre-order, so the first entry is the root)
    const rootNode = session.nodes[0];
    if (!rootNode) return;
    rootNode.children.forEach((childId, idx) => {
      const current = this.store.weights[rootNode.id]?.[idx];
      if (current === undefined) return;
      const line = document.createElement("div");
      line.className = "slider-line";
      const label = document.createElement("label");
      label.textContent = childId;
      const slider = document.createElement("input");
      slider.type = "range";
      slider.min = "0.01";
      slider.max = "0.99";
      slider.step = "0.01";
      slider.value = String(current);
      slider.dataset.node = childId;
      slider.addEventListener("change", () => {
        void this.store
          .whatIf(childId, Number(slider.value))
          .then((payload) => {
            if (!payload) {
              this.toast(
                this.store.lastError?.message ?? "what-if failed", true,
              );
            }
            this.renderRanking();
          });
      });
      const value = document.createElement("span");
      value.className = "muted";
      value.textContent = formatWeight(current);
      line.append(label, slider, value);
      box.appendChild(line);
    });

    const reset = document.createElement("button");
    reset.id = "whatif-reset";
    reset.textContent = "Reset to evaluated ranking";
    reset.addEventListener("click", () => {
      this.store.reset();
      this.renderRanking();
      this.renderWhatIf();
    });
    box.appendChild(reset);
  }
}
