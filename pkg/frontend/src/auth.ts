/** Sign-in state and the OIDC authorization-code flow with PKCE.
 *
 * Bearer tokens are held on the session object and never written to any
 * storage; only the short-lived state/verifier pair crosses the provider
 * redirect, through an injectable single-slot store (sessionStorage in the
 * browser build).
 */

import type { FetchLike } from "./api.js";
import type { OidcConfig } from "./config.js";

export interface PendingLogin {
  state: string;
  verifier: string;
}

/** One-slot keeper for the in-flight login; take() must clear it. */
export interface PendingStore {
  set(value: PendingLogin): void;
  take(): PendingLogin | null;
}

export function memoryPendingStore(): PendingStore {
  let slot: PendingLogin | null = null;
  return {
    set(value) {
      slot = value;
    },
    take() {
      const v = slot;
      slot = null;
      return v;
    },
  };
}

const PENDING_KEY = "auth.pending";

/** Browser store: survives the redirect, holds no tokens, self-clears on take. */
export function sessionPendingStore(storage: Storage): PendingStore {
  return {
    set(value) {
      storage.setItem(PENDING_KEY, JSON.stringify(value));
    },
    take() {
      const raw = storage.getItem(PENDING_KEY);
      storage.removeItem(PENDING_KEY);
      if (raw === null) return null;
      try {
        return JSON.parse(raw) as PendingLogin;
      } catch {
        return null;
      }
    },
  };
}

function base64url(bytes: Uint8Array): string {
  let bin = "";
  for (const b of bytes) bin += String.fromCharCode(b);
  const b64 = typeof btoa === "function" ? btoa(bin) : Buffer.from(bytes).toString("base64");
  return b64.replace(/\+/g, "-").replace(/\//g, "_").replace(/=+$/, "");
}

export function randomToken(bytes = 32): string {
  const buf = new Uint8Array(bytes);
  crypto.getRandomValues(buf);
  return base64url(buf);
}

export async function pkceChallenge(verifier: string): Promise<string> {
  const digest = await crypto.subtle.digest("SHA-256", new TextEncoder().encode(verifier));
  return base64url(new Uint8Array(digest));
}

export class AuthError extends Error {}

export class AuthSession {
  private bearer: string | null = null;
  private subject: string | null = null;
  /** Operator token unlocks the moderation screen; memory only. */
  adminToken: string | null = null;

  get token(): string | null {
    return this.bearer;
  }

  get who(): string | null {
    return this.subject;
  }

  get isLoggedIn(): boolean {
    return this.bearer !== null;
  }

  get isAdmin(): boolean {
    return this.adminToken !== null;
  }

  /** Stub deployments hand the signed token over directly. */
  useStaticToken(token: string, subject: string | null = null): void {
    this.bearer = token;
    this.subject = subject;
  }

  useAdminToken(token: string): void {
    this.adminToken = token;
  }

  logout(): void {
    this.bearer = null;
    this.subject = null;
    this.adminToken = null;
  }

  /** Build the provider authorize URL and stash state+verifier for the return leg. */
  async beginLogin(oidc: OidcConfig, pending: PendingStore): Promise<string> {
    const state = randomToken(16);
    const verifier = randomToken(48);
    pending.set({ state, verifier });
    const params = new URLSearchParams({
      response_type: "code",
      client_id: oidc.clientId,
      redirect_uri: oidc.redirectUri,
      scope: oidc.scope ?? "openid email profile",
      state,
      code_challenge: await pkceChallenge(verifier),
      code_challenge_method: "S256",
    });
    return `${oidc.authorizeUrl}?${params}`;
  }

  /** Exchange the redirect's code for tokens; keeps them in memory only. */
  async completeLogin(
    oidc: OidcConfig,
    params: URLSearchParams,
    pending: PendingStore,
    fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ): Promise<void> {
    const code = params.get("code");
    const state = params.get("state");
    if (!code || !state) throw new AuthError("missing code or state in callback");
    const stored = pending.take();
    if (stored === null || stored.state !== state) {
      throw new AuthError("login state mismatch");
    }
    const body = new URLSearchParams({
      grant_type: "authorization_code",
      code,
      redirect_uri: oidc.redirectUri,
      client_id: oidc.clientId,
      code_verifier: stored.verifier,
    });
    const resp = await fetchImpl(oidc.tokenUrl, {
      method: "POST",
      headers: { "content-type": "application/x-www-form-urlencoded" },
      body: body.toString(),
    });
    if (!resp.ok) throw new AuthError(`token exchange failed: ${resp.status}`);
    const tokens = (await resp.json()) as { id_token?: string; access_token?: string };
    const bearer = tokens.id_token ?? tokens.access_token;
    if (!bearer) throw new AuthError("provider returned no usable token");
    this.bearer = bearer;
    this.subject = null;
  }
}
