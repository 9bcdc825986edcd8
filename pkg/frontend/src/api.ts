/** Typed client for the platform HTTP API.
 *
 * Tokens live on the instance and nowhere else. Every non-2xx response is
 * turned into an ApiError carrying the server's {code, message, detail}
 * payload verbatim so the UI can surface exact codes.
 */

export interface SiteItem {
  id: string;
  verbose_id: string;
  name: string;
  description: string;
  country: string;
  state: string;
  district: string;
  locality: string;
  status: string;
  completed: boolean;
  ark: string | null;
  model_url: string | null;
  published_at: number | null;
}

export interface SiteList {
  items: SiteItem[];
  next_offset: number | null;
}

export interface ContributionReceipt {
  contribution_id: string | null;
  accepted_count: number;
  rejected: Array<{ filename: string; reason: string }>;
}

export interface RunStatus {
  run_id: string;
  site_id: string;
  state: string;
  ark: string | null;
  error: string;
  stage_log: Array<{ stage: string; status: string; duration_s: number; message: string }>;
}

export interface ModerationItem {
  image_id: string;
  site_id: string;
  filename: string;
  [extra: string]: unknown;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public detail: unknown = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function toApiError(resp: Response): Promise<ApiError> {
  let code = "HTTP_ERROR";
  let message = `${resp.status} ${resp.statusText}`;
  let detail: unknown = null;
  try {
    const body = await resp.json();
    if (body && typeof body.code === "string") {
      code = body.code;
      message = typeof body.message === "string" ? body.message : message;
      detail = body.detail ?? null;
    }
  } catch {
    // non-JSON error body; keep the synthesized fields
  }
  return new ApiError(resp.status, code, message, detail);
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  /** Contributor bearer token, memory only. */
  token: string | null = null;
  /** Operator token for the admin endpoints, memory only. */
  adminToken: string | null = null;

  constructor(
    public base: string = "",
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(
    method: string,
    path: string,
    init: RequestInit & { admin?: boolean } = {},
  ): Promise<Response> {
    const headers = new Headers(init.headers);
    const bearer = init.admin ? this.adminToken : this.token;
    if (bearer) headers.set("authorization", `Bearer ${bearer}`);
    const resp = await this.fetchImpl(`${this.base}${path}`, { ...init, method, headers });
    if (!resp.ok && resp.status !== 304) throw await toApiError(resp);
    return resp;
  }

  async listSites(q = "", limit = 50, offset = 0): Promise<SiteList> {
    const params = new URLSearchParams();
    if (q) params.set("q", q);
    params.set("limit", String(limit));
    params.set("offset", String(offset));
    const resp = await this.request("GET", `/api/sites?${params}`);
    return resp.json();
  }

  modelUrl(siteRef: string): string {
    return `${this.base}/api/sites/${encodeURIComponent(siteRef)}/model`;
  }

  /** Link target for a full "ark:/naan/name" identifier. */
  arkHref(ark: string): string {
    return `${this.base}/${ark}`;
  }

  async fetchModel(
    siteRef: string,
    etag: string | null = null,
  ): Promise<{ status: 200 | 304; bytes: Uint8Array | null; etag: string | null }> {
    const headers: Record<string, string> = {};
    if (etag) headers["if-none-match"] = etag;
    const resp = await this.request("GET", `/api/sites/${encodeURIComponent(siteRef)}/model`, {
      headers,
    });
    if (resp.status === 304) return { status: 304, bytes: null, etag };
    const bytes = new Uint8Array(await resp.arrayBuffer());
    return { status: 200, bytes, etag: resp.headers.get("etag") };
  }

  /** Upload one prepared image; the server replies with a per-file receipt. */
  async contribute(siteId: string, file: { name: string; bytes: Uint8Array }): Promise<ContributionReceipt> {
    const form = new FormData();
    form.append("site_id", siteId);
    const copy = new Uint8Array(file.bytes); // detached view keeps FormData happy
    form.append("images", new Blob([copy.buffer], { type: "image/jpeg" }), file.name);
    const resp = await this.request("POST", "/api/contributions", { body: form });
    return resp.json();
  }

  async requestSite(body: { name: string; location?: string; note?: string }): Promise<unknown> {
    const resp = await this.request("POST", "/api/requests/site", {
      body: JSON.stringify(body),
      headers: { "content-type": "application/json" },
    });
    return resp.json();
  }

  async requestHighres(body: { site_id: string; contact: string }): Promise<unknown> {
    const resp = await this.request("POST", "/api/requests/highres", {
      body: JSON.stringify(body),
      headers: { "content-type": "application/json" },
    });
    return resp.json();
  }

  async arkMetadata(naan: string, name: string): Promise<Record<string, unknown>> {
    const resp = await this.request("GET", `/api/ark/${naan}/${name}`);
    return resp.json();
  }

  async health(): Promise<{ status: string; queue_depth: number; db_ok: boolean }> {
    const resp = await this.request("GET", "/healthz");
    return resp.json();
  }

  // -- operator endpoints ----------------------------------------------------------

  async moderationQueue(): Promise<{ items: ModerationItem[] }> {
    const resp = await this.request("GET", "/api/admin/moderation", { admin: true });
    return resp.json();
  }

  async moderate(imageId: string, action: "approve" | "reject"): Promise<unknown> {
    const resp = await this.request("POST", `/api/admin/moderation/${encodeURIComponent(imageId)}`, {
      admin: true,
      body: JSON.stringify({ action }),
      headers: { "content-type": "application/json" },
    });
    return resp.json();
  }

  async createRun(siteId: string): Promise<RunStatus> {
    const resp = await this.request("POST", "/api/admin/runs", {
      admin: true,
      body: JSON.stringify({ site_id: siteId }),
      headers: { "content-type": "application/json" },
    });
    return resp.json();
  }

  async runStatus(runId: string): Promise<RunStatus> {
    const resp = await this.request("GET", `/api/admin/runs/${encodeURIComponent(runId)}`, {
      admin: true,
    });
    return resp.json();
  }

  async completeSite(siteRef: string): Promise<unknown> {
    const resp = await this.request(
      "POST",
      `/api/admin/sites/${encodeURIComponent(siteRef)}/complete`,
      { admin: true },
    );
    return resp.json();
  }
}
