/** Term-by-term labeling flow for one rater.
 *
 * One term at a time with keyboard shortcuts: s = stopword,
 * i = informative, e = skip to the end of the queue. Every choice POSTs
 * immediately; a failed POST shows a retry banner and keeps the pending
 * judgment, so nothing is lost silently. Progress counts come from the
 * service's next-term responses, never from client-side math.
 */

import { Label, ReviewApi, SessionCandidate } from "./api.js";
import { KeyboardRouter } from "./keyboard.js";

const METRICS = ["tf", "idf", "tfidf", "entropy"] as const;

export class LabelingView {
  private candidates: SessionCandidate[] = [];
  private byTerm = new Map<string, SessionCandidate>();
  private labeledByMe = new Set<string>();
  private deferred: string[] = [];
  private current: string | null = null;
  private progress = { labeled: 0, total: 0 };
  private pending: { term: string; label: Label } | null = null;
  private failure: string | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ReviewApi,
    private readonly sessionId: string,
    private readonly rater: string,
    private readonly keyboard: KeyboardRouter,
    private readonly onComplete: () => void,
  ) {}

  async start(): Promise<void> {
    const session = await this.api.exportSession(this.sessionId);
    this.candidates = session.candidates;
    this.byTerm = new Map(session.candidates.map((c) => [c.term, c]));
    this.labeledByMe = new Set(
      session.labels.filter((l) => l.rater === this.rater).map((l) => l.term),
    );
    await this.refreshFromServer();
    this.advance();
  }

  private async refreshFromServer(): Promise<void> {
    const next = await this.api.next(this.sessionId, this.rater);
    this.progress = { labeled: next.labeled, total: next.total };
  }

  /** First unlabeled candidate in presentation order, deferred ones last. */
  private pickCurrent(): string | null {
    for (const candidate of this.candidates) {
      if (!this.labeledByMe.has(candidate.term) && !this.deferred.includes(candidate.term)) {
        return candidate.term;
      }
    }
    for (const term of this.deferred) {
      if (!this.labeledByMe.has(term)) {
        return term;
      }
    }
    return null;
  }

  private advance(): void {
    this.current = this.pickCurrent();
    if (this.current === null) {
      this.keyboard.setHandlers({});
      this.root.innerHTML = `<section class="done">
        <p data-role="done">All ${this.progress.total} terms labeled.</p>
      </section>`;
      this.onComplete();
      return;
    }
    this.render();
  }

  private async label(label: Label): Promise<void> {
    if (this.current === null) {
      return;
    }
    this.pending = { term: this.current, label };
    await this.flushPending();
  }

  private async flushPending(): Promise<void> {
    if (!this.pending) {
      return;
    }
    const { term, label } = this.pending;
    try {
      await this.api.submitLabel(this.sessionId, this.rater, term, label);
    } catch (error) {
      this.failure = `Could not save "${label}" for "${term}" (${String(error)})`;
      this.render();
      return;
    }
    this.pending = null;
    this.failure = null;
    this.labeledByMe.add(term);
    await this.refreshFromServer();
    this.advance();
  }

  private skipToEnd(): void {
    if (this.current === null) {
      return;
    }
    this.deferred.push(this.current);
    this.advance();
  }

  private render(): void {
    const term = this.current!;
    const candidate = this.byTerm.get(term);
    const ranks = candidate?.ranks ?? null;
    const sources = candidate?.sources ?? [];
    const badges = ranks
      ? METRICS.map((metric) => {
          const top = sources.includes(metric) ? " top" : "";
          return `<span class="badge${top}" data-metric="${metric}">` +
            `${metric} #${ranks[metric]}</span>`;
        }).join("")
      : "";
    const banner = this.failure
      ? `<div class="banner" data-role="retry-banner">${this.failure}
           <button data-role="retry">Retry</button></div>`
      : "";
    this.root.innerHTML = `
      <section class="labeling">
        <header>
          <span data-role="progress">${this.progress.labeled} / ${this.progress.total} labeled</span>
          <progress max="${this.progress.total}" value="${this.progress.labeled}"></progress>
        </header>
        ${banner}
        <div class="term-card">
          <h2 data-role="term">${term}</h2>
          <div class="badges">${badges}</div>
        </div>
        <div class="actions">
          <button data-role="stopword"><kbd>s</kbd> stopword</button>
          <button data-role="informative"><kbd>i</kbd> informative</button>
          <button data-role="skip"><kbd>e</kbd> skip to end</button>
        </div>
      </section>`;
    this.root.querySelector<HTMLButtonElement>("[data-role=stopword]")!
      .addEventListener("click", () => void this.label("stopword"));
    this.root.querySelector<HTMLButtonElement>("[data-role=informative]")!
      .addEventListener("click", () => void this.label("informative"));
    this.root.querySelector<HTMLButtonElement>("[data-role=skip]")!
      .addEventListener("click", () => this.skipToEnd());
    this.root.querySelector<HTMLButtonElement>("[data-role=retry]")
      ?.addEventListener("click", () => void this.flushPending());
    this.keyboard.setHandlers({
      s: () => void this.label("stopword"),
      i: () => void this.label("informative"),
      e: () => this.skipToEnd(),
    });
  }
}
