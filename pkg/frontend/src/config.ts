/** Client configuration with server-mirroring defaults. */

export interface OidcConfig {
  authorizeUrl: string;
  tokenUrl: string;
  clientId: string;
  redirectUri: string;
  scope?: string;
}

export interface ClientConfig {
  /** Base URL of the platform API, "" for same-origin. */
  apiBase: string;
  /** JPEG quality used when re-encoding before upload. */
  jpegQuality: number;
  /** Longest output side in pixels; larger images are downscaled. */
  maxLongSide: number;
  /** Mirrors the server-side minimum short side so bad files fail fast. */
  minShortSide: number;
  /** Concurrent upload requests. */
  uploadConcurrency: number;
  /** Extra attempts per image after the first failure. */
  uploadRetries: number;
  oidc?: OidcConfig;
}

export const DEFAULTS: ClientConfig = {
  apiBase: "",
  jpegQuality: 80,
  maxLongSide: 4096,
  minShortSide: 1080,
  uploadConcurrency: 4,
  uploadRetries: 2,
};

export function makeConfig(overrides: Partial<ClientConfig> = {}): ClientConfig {
  return { ...DEFAULTS, ...overrides };
}
