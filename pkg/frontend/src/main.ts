/**
 * Bootstrap: open an existing session (?session=<id>) or create one from
 * pasted project JSON, then hand the page to the elicitation UI.
 */

import { ApiClient } from "./api.js";
import { ElicitationPage } from "./ui.js";

const api = new ApiClient("");

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) return;
  const params = new URLSearchParams(window.location.search);
  const sessionId = params.get("session");
  const expert = params.get("expert") ?? "analyst";
  if (sessionId) {
    const page = new ElicitationPage(api, root, sessionId, expert);
    await page.start();
    return;
  }
  renderLanding(root, expert);
}

function renderLanding(root: HTMLElement, expert: string): void {
  root.innerHTML = `
    <header><h1>Pairwise elicitation</h1></header>
    <section class="panel">
      <p>Paste a project document (<code>*.ahp.json</code>) to start a
      session, or open an existing one with <code>?session=&lt;id&gt;</code>.</p>
      <textarea id="project-input" rows="14" spellcheck="false"
        placeholder='{"version": "1", "hierarchy": { ... }}'></textarea>
      <div>
        <button id="create-btn">Create session</button>
        <span id="create-error" class="error"></span>
      </div>
    </section>`;
  const button = document.getElementById("create-btn") as HTMLButtonElement;
  button.addEventListener("click", async () => {
    const text = (document.getElementById("project-input") as HTMLTextAreaElement).value;
    const errorBox = document.getElementById("create-error") as HTMLSpanElement;
    errorBox.textContent = "";
    try {
      const created = await api.createSession(text);
      const target = new URL(window.location.href);
      target.searchParams.set("session", created.session_id);
      target.searchParams.set("expert", expert);
      window.location.assign(target.toString());
    } catch (err) {
      errorBox.textContent = err instanceof Error ? err.message : String(err);
    }
  });
}

void boot();
