/** Wire types and a small fetch client for the check service.
 *
 * The client performs no matching of its own; every detection decision
 * comes from POST /v1/check and the attribute names and descriptions
 * from GET /v1/taxonomy.
 */

export type Strategy = "mask" | "remove" | "placeholder";

export interface WireSpan {
  start: number;
  end: number;
  phrase: string;
  lexicon_id: string;
  attribute: string | null;
}

export interface EvidenceSpan {
  start: number;
  end: number;
  phrase: string;
  lexicon_id: string;
}

export interface WireLabel {
  attribute: string;
  method: string;
  spans: EvidenceSpan[];
}

export interface WireEdit {
  span: EvidenceSpan;
  replacement: string;
  strategy: string;
}

export interface CheckResponse {
  original: string;
  detected: boolean;
  spans: WireSpan[];
  labels: WireLabel[];
  revealed: string;
  eliminated: string;
  edits: WireEdit[];
  strategy: string;
}

export interface TaxonomyLeaf {
  id: string;
  name: string;
  description: string;
}

export interface TaxonomyBranch {
  name: string;
  attributes: TaxonomyLeaf[];
}

export interface TaxonomyResponse {
  root: string;
  branches: TaxonomyBranch[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    // bind: an unbound global fetch throws "illegal invocation" in browsers
    this.fetchImpl = fetchImpl ?? globalThis.fetch.bind(globalThis);
  }

  async check(
    text: string,
    strategy: Strategy,
    signal?: AbortSignal,
  ): Promise<CheckResponse> {
    const res = await this.fetchImpl(`${this.base}/v1/check`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text, strategy }),
      signal,
    });
    return (await this.parse(res)) as CheckResponse;
  }

  async taxonomy(signal?: AbortSignal): Promise<TaxonomyResponse> {
    const res = await this.fetchImpl(`${this.base}/v1/taxonomy`, { signal });
    return (await this.parse(res)) as TaxonomyResponse;
  }

  private async parse(res: Response): Promise<unknown> {
    if (res.ok) {
      return res.json();
    }
    let code = "internal";
    let message = `HTTP ${res.status}`;
    try {
      const body = (await res.json()) as { code?: string; message?: string };
      if (typeof body.code === "string") code = body.code;
      if (typeof body.message === "string") message = body.message;
    } catch {
      // non-JSON error body; keep the status-line message
    }
    throw new ApiError(res.status, code, message);
  }
}
