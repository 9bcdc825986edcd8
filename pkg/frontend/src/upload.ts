/** Batched contribution uploads with retries and exact server-code reporting.
 *
 * At most `uploadConcurrency` requests are in flight at once. A failed
 * request is retried `uploadRetries` more times when the failure looks
 * transient (network error, 429, 5xx); semantic rejections fail the image
 * immediately with the server's code. Two failures are global: a 409 for a
 * completed site fails everything, and a 401 pauses the flow for re-login,
 * leaving unsent images VALID so they survive the round trip.
 */

import { ApiClient, ApiError, type ContributionReceipt } from "./api.js";
import type { ClientConfig } from "./config.js";
import { setStatus, type ClientImage } from "./images.js";

export interface UploadEvents {
  onUpdate?: (image: ClientImage) => void;
  onAuthExpired?: () => void;
}

export interface UploadSummary {
  done: number;
  failed: number;
  skipped: number;
  authExpired: boolean;
  completedSite: boolean;
  receipts: ContributionReceipt[];
}

function transientError(err: unknown): boolean {
  if (err instanceof ApiError) {
    return err.status === 429 || err.status >= 500;
  }
  return true; // fetch-level failure: connection drop, DNS, abort
}

export async function uploadImages(
  api: ApiClient,
  siteId: string,
  images: ClientImage[],
  config: ClientConfig,
  events: UploadEvents = {},
): Promise<UploadSummary> {
  const summary: UploadSummary = {
    done: 0,
    failed: 0,
    skipped: 0,
    authExpired: false,
    completedSite: false,
    receipts: [],
  };

  // Nothing leaves the browser unless intake finished for that image.
  const queue: ClientImage[] = [];
  for (const image of images) {
    if (image.status === "VALID" && image.payload !== null) {
      queue.push(image);
    } else {
      summary.skipped += 1;
    }
  }

  let cursor = 0;
  let stopped = false;

  const failRemaining = (code: string, message: string) => {
    for (const image of queue) {
      if (image.status === "VALID" || image.status === "UPLOADING") {
        setStatus(image, "FAILED", code, message);
        events.onUpdate?.(image);
      }
    }
  };

  const sendOne = async (image: ClientImage): Promise<void> => {
    setStatus(image, "UPLOADING");
    events.onUpdate?.(image);
    const attempts = 1 + config.uploadRetries;
    for (let attempt = 1; attempt <= attempts; attempt++) {
      if (stopped) return;
      image.attempts = attempt;
      try {
        const receipt = await api.contribute(siteId, {
          name: image.name,
          bytes: image.payload as Uint8Array,
        });
        summary.receipts.push(receipt);
        const rejection = receipt.rejected.find((r) => r.filename === image.name);
        if (rejection !== undefined) {
          setStatus(image, "FAILED", rejection.reason, `server rejected: ${rejection.reason}`);
          summary.failed += 1;
        } else {
          setStatus(image, "DONE");
          summary.done += 1;
        }
        events.onUpdate?.(image);
        return;
      } catch (err) {
        if (err instanceof ApiError && err.status === 409 && err.code === "SITE_COMPLETED") {
          stopped = true;
          summary.completedSite = true;
          summary.failed += queue.filter(
            (i) => i.status === "VALID" || i.status === "UPLOADING",
          ).length;
          failRemaining(err.code, err.message);
          return;
        }
        if (err instanceof ApiError && err.status === 401) {
          stopped = true;
          summary.authExpired = true;
          setStatus(image, "VALID", null, "session expired, sign in again"); // back in line
          events.onUpdate?.(image);
          events.onAuthExpired?.();
          return;
        }
        if (attempt < attempts && transientError(err)) {
          continue;
        }
        const code = err instanceof ApiError ? err.code : "NETWORK";
        const message = err instanceof Error ? err.message : String(err);
        setStatus(image, "FAILED", code, message);
        summary.failed += 1;
        events.onUpdate?.(image);
        return;
      }
    }
  };

  const worker = async (): Promise<void> => {
    while (!stopped) {
      const index = cursor;
      cursor += 1;
      if (index >= queue.length) return;
      await sendOne(queue[index]);
    }
  };

  const lanes = Math.max(1, Math.min(config.uploadConcurrency, queue.length));
  await Promise.all(Array.from({ length: lanes }, () => worker()));
  return summary;
}
