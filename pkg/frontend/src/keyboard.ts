/** Global keydown dispatcher for the labeling shortcuts.
 *
 * Thousands of rapid binary judgments make the keyboard the primary input:
 * handlers register per view and the active view swaps them out. Keys are
 * ignored while focus is in a text input.
 */

export type KeyHandlers = Record<string, () => void>;

export class KeyboardRouter {
  private handlers: KeyHandlers = {};
  private readonly listener = (event: KeyboardEvent) => {
    const target = event.target as HTMLElement | null;
    if (target && (target.tagName === "INPUT" || target.tagName === "TEXTAREA")) {
      return;
    }
    const handler = this.handlers[event.key];
    if (handler) {
      event.preventDefault();
      handler();
    }
  };

  constructor(private readonly doc: Document) {
    doc.addEventListener("keydown", this.listener);
  }

  setHandlers(handlers: KeyHandlers): void {
    this.handlers = handlers;
  }

  dispose(): void {
    this.doc.removeEventListener("keydown", this.listener);
    this.handlers = {};
  }
}
