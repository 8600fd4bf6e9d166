/** Reconciliation: disputed terms side by side, alpha, and finalize.
 *
 * The alpha figure is rendered exactly as the service serialized it; this
 * view does no arithmetic of its own. Consensus picks POST immediately and
 * reload the listing, so alpha is visible before and after each change and
 * the finalize button only unlocks when the service reports every dispute
 * resolved.
 */

import { DiscrepancyRow, Label, ReviewApi } from "./api.js";
import { KeyboardRouter } from "./keyboard.js";

const EMBEDDED_LISTS = ["nltk", "uspto", "study", "prior"];

export class ReconciliationView {
  private rows: DiscrepancyRow[] = [];
  private complete = false;
  private missingCount = 0;
  private alphaText = "";
  private finalText: string | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ReviewApi,
    private readonly sessionId: string,
    private readonly keyboard: KeyboardRouter,
  ) {}

  async start(): Promise<void> {
    await this.load();
  }

  private async load(): Promise<void> {
    const [discrepancies, alpha] = await Promise.all([
      this.api.discrepancies(this.sessionId),
      this.api.alpha(this.sessionId),
    ]);
    this.complete = discrepancies.complete;
    this.rows = discrepancies.complete ? discrepancies.rows : [];
    this.missingCount = discrepancies.complete ? 0 : discrepancies.missing.length;
    this.alphaText = alpha.defined ? alpha.raw : `undefined (${alpha.reason})`;
    this.render();
  }

  private async resolve(term: string, label: Label): Promise<void> {
    await this.api.recordConsensus(this.sessionId, term, label);
    await this.load();
  }

  private async finalize(): Promise<void> {
    const chosen = Array.from(
      this.root.querySelectorAll<HTMLInputElement>("[data-role=prior]:checked"),
    ).map((box) => box.value);
    this.finalText = await this.api.finalize(this.sessionId, chosen);
    this.render();
  }

  private render(): void {
    if (this.finalText !== null) {
      const encoded = encodeURIComponent(this.finalText);
      this.root.innerHTML = `
        <section class="finalized">
          <h2>Final stopword list</h2>
          <a download="stopwords.txt" href="data:text/plain;charset=utf-8,${encoded}">Download</a>
          <pre data-role="final-list">${this.finalText}</pre>
        </section>`;
      this.keyboard.setHandlers({});
      return;
    }
    if (!this.complete) {
      this.root.innerHTML = `
        <section class="reconcile">
          <p data-role="waiting">Waiting for all raters to finish
            (${this.missingCount} labels outstanding).</p>
          <p>Inter-rater reliability: <span data-role="alpha">${this.alphaText}</span></p>
          <button data-role="refresh"><kbd>r</kbd> refresh</button>
        </section>`;
      this.root.querySelector<HTMLButtonElement>("[data-role=refresh]")!
        .addEventListener("click", () => void this.load());
      this.keyboard.setHandlers({ r: () => void this.load() });
      return;
    }
    const unresolved = this.rows.filter((row) => !row.resolved);
    const raters = this.rows.length
      ? Object.keys(this.rows[0].labels)
      : [];
    const header = raters.map((r) => `<th>${r}</th>`).join("");
    const body = this.rows
      .map((row) => {
        const cells = raters
          .map((r) => `<td class="${row.labels[r]}">${row.labels[r]}</td>`)
          .join("");
        const action = row.resolved
          ? `<td data-role="resolved">${row.resolved}</td>`
          : `<td>
               <button data-role="pick-stopword" data-term="${row.term}">stopword</button>
               <button data-role="pick-informative" data-term="${row.term}">informative</button>
             </td>`;
        return `<tr data-term="${row.term}"><td>${row.term}</td>${cells}${action}</tr>`;
      })
      .join("");
    const table = this.rows.length
      ? `<table class="disputes">
           <thead><tr><th>term</th>${header}<th>consensus</th></tr></thead>
           <tbody>${body}</tbody>
         </table>`
      : `<p data-role="no-disputes">No disagreements.</p>`;
    const priors = EMBEDDED_LISTS
      .map((name) =>
        `<label><input type="checkbox" data-role="prior" value="${name}">${name}</label>`)
      .join(" ");
    this.root.innerHTML = `
      <section class="reconcile">
        <p>Inter-rater reliability: <span data-role="alpha">${this.alphaText}</span></p>
        ${table}
        <div class="finalize">
          <fieldset><legend>Merge with lists</legend>${priors}</fieldset>
          <button data-role="finalize" ${unresolved.length ? "disabled" : ""}>
            Finalize (${unresolved.length} unresolved)
          </button>
        </div>
      </section>`;
    for (const button of this.root.querySelectorAll<HTMLButtonElement>("[data-role=pick-stopword]")) {
      button.addEventListener("click", () => void this.resolve(button.dataset.term!, "stopword"));
    }
    for (const button of this.root.querySelectorAll<HTMLButtonElement>("[data-role=pick-informative]")) {
      button.addEventListener("click", () => void this.resolve(button.dataset.term!, "informative"));
    }
    const finalizeButton = this.root.querySelector<HTMLButtonElement>("[data-role=finalize]")!;
    if (!unresolved.length) {
      finalizeButton.addEventListener("click", () => void this.finalize());
    }
    this.keyboard.setHandlers({});
  }
}
