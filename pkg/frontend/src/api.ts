/** Typed client for the review service HTTP+JSON API.
 *
 * The UI performs no statistical computation: every number it shows comes
 * out of these responses. The alpha endpoint is additionally surfaced as
 * the raw serialized number so the display matches the service byte for
 * byte.
 */

export type Label = "stopword" | "informative";

export interface NextTerm {
  term: string | null;
  ranks?: Record<string, number> | null;
  sources?: string[];
  labeled: number;
  total: number;
}

export interface DiscrepancyRow {
  term: string;
  labels: Record<string, string>;
  resolved: string | null;
}

export interface SessionCandidate {
  term: string;
  ranks: Record<string, number> | null;
  sources: string[];
}

export interface SessionExport {
  session_id: string;
  state: string;
  raters: string[];
  candidates: SessionCandidate[];
  labels: { rater: string; term: string; label: string }[];
  consensus: Record<string, string>;
}

export type AlphaResult =
  | { defined: true; value: number; raw: string }
  | { defined: false; reason: string };

export type DiscrepanciesResult =
  | { complete: true; rows: DiscrepancyRow[] }
  | { complete: false; missing: { rater: string; term: string }[] };

export class ApiError extends Error {
  constructor(public status: number, public detail: unknown) {
    super(`HTTP ${status}: ${JSON.stringify(detail)}`);
  }
}

async function parseError(response: Response): Promise<never> {
  let detail: unknown = null;
  try {
    detail = (await response.json()).detail;
  } catch {
    detail = await response.text().catch(() => null);
  }
  throw new ApiError(response.status, detail);
}

export class ReviewApi {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: typeof fetch = (...args) => globalThis.fetch(...args),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      await parseError(response);
    }
    return response;
  }

  private post(path: string, body: unknown): Promise<Response> {
    return this.request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async health(): Promise<boolean> {
    const response = await this.request("/healthz");
    return (await response.json()).status === "ok";
  }

  async listSessions(): Promise<string[]> {
    const response = await this.request("/sessions");
    return (await response.json()).sessions;
  }

  async createSession(terms: string[], raters: string[]): Promise<string> {
    const response = await this.post("/sessions", { terms, raters });
    return (await response.json()).session_id;
  }

  async exportSession(sessionId: string): Promise<SessionExport> {
    const response = await this.request(`/sessions/${sessionId}`);
    return response.json();
  }

  async next(sessionId: string, rater: string): Promise<NextTerm> {
    const response = await this.request(
      `/sessions/${sessionId}/next?rater=${encodeURIComponent(rater)}`,
    );
    return response.json();
  }

  async submitLabel(sessionId: string, rater: string, term: string, label: Label): Promise<void> {
    await this.post(`/sessions/${sessionId}/labels`, { rater, term, label });
  }

  async discrepancies(sessionId: string): Promise<DiscrepanciesResult> {
    try {
      const response = await this.request(`/sessions/${sessionId}/discrepancies`);
      return { complete: true, rows: (await response.json()).terms };
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        const detail = error.detail as { missing?: { rater: string; term: string }[] };
        return { complete: false, missing: detail?.missing ?? [] };
      }
      throw error;
    }
  }

  async recordConsensus(sessionId: string, term: string, label: Label): Promise<void> {
    await this.post(`/sessions/${sessionId}/consensus`, { term, label });
  }

  /** Alpha with the service's own serialization of the number preserved. */
  async alpha(sessionId: string): Promise<AlphaResult> {
    const response = await this.fetchImpl(`${this.base}/sessions/${sessionId}/alpha`);
    const text = await response.text();
    if (response.ok) {
      const match = text.match(/"alpha"\s*:\s*([^,}\s]+)/);
      const value = (JSON.parse(text) as { alpha: number }).alpha;
      return { defined: true, value, raw: match ? match[1] : String(value) };
    }
    let reason = text;
    try {
      const detail = (JSON.parse(text) as { detail?: { reason?: string } }).detail;
      reason = detail?.reason ?? text;
    } catch {
      /* keep raw text */
    }
    return { defined: false, reason };
  }

  /** Finalize and return the stopword list file contents. */
  async finalize(sessionId: string, priorLists: string[] = []): Promise<string> {
    const response = await this.post(`/sessions/${sessionId}/finalize`, {
      prior_lists: priorLists,
    });
    return response.text();
  }
}
