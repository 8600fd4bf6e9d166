/** Entry point: join a session, label, then reconcile.
 *
 * Routing lives in the location hash (#/session/<id>/rater/<name>) so a
 * refresh rejoins the same session and resumes at the first unlabeled term
 * per the service's next-term contract.
 */

import { ReviewApi } from "./api.js";
import { KeyboardRouter } from "./keyboard.js";
import { LabelingView } from "./labeling.js";
import { ReconciliationView } from "./reconcile.js";

function parseHash(hash: string): { sessionId: string; rater: string } | null {
  const match = hash.match(/^#\/session\/([^/]+)\/rater\/([^/]+)$/);
  if (!match) {
    return null;
  }
  return { sessionId: decodeURIComponent(match[1]), rater: decodeURIComponent(match[2]) };
}

async function renderJoinForm(root: HTMLElement, api: ReviewApi): Promise<void> {
  let options = "";
  try {
    const sessions = await api.listSessions();
    options = sessions.map((id) => `<option value="${id}">${id}</option>`).join("");
  } catch {
    options = "";
  }
  root.innerHTML = `
    <section class="join">
      <h1>stopmine review</h1>
      <form data-role="join-form">
        <label>Session
          <input name="session" list="known-sessions" required>
          <datalist id="known-sessions">${options}</datalist>
        </label>
        <label>Rater <input name="rater" required></label>
        <button type="submit">Start labeling</button>
      </form>
    </section>`;
  root.querySelector<HTMLFormElement>("[data-role=join-form]")!
    .addEventListener("submit", (event) => {
      event.preventDefault();
      const data = new FormData(event.target as HTMLFormElement);
      const sessionId = String(data.get("session") ?? "").trim();
      const rater = String(data.get("rater") ?? "").trim();
      if (sessionId && rater) {
        window.location.hash = `#/session/${encodeURIComponent(sessionId)}` +
          `/rater/${encodeURIComponent(rater)}`;
      }
    });
}

export async function mount(root: HTMLElement, api: ReviewApi, win: Window): Promise<void> {
  const route = parseHash(win.location.hash);
  if (!route) {
    await renderJoinForm(root, api);
    return;
  }
  const keyboard = new KeyboardRouter(win.document);
  const reconcile = new ReconciliationView(root, api, route.sessionId, keyboard);
  const labeling = new LabelingView(
    root, api, route.sessionId, route.rater, keyboard,
    () => void reconcile.start(),
  );
  await labeling.start();
}

declare global {
  interface Window {
    __STOPMINE_TEST__?: boolean;
  }
}

if (typeof window !== "undefined" && !window.__STOPMINE_TEST__) {
  const boot = () => {
    const root = document.getElementById("app");
    if (root) {
      void mount(root, new ReviewApi(""), window);
      window.addEventListener("hashchange", () => void mount(root, new ReviewApi(""), window));
    }
  };
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", boot);
  } else {
    boot();
  }
}
