/** Browser glue: canvas-backed codec, config pickup, boot sequence.
 * Everything here needs real browser APIs, so it stays a thin shell over
 * the tested modules.
 */

import { ApiClient } from "./api.js";
import { AuthSession, sessionPendingStore } from "./auth.js";
import { CodecError, type ImageCodec, type RawImage } from "./codec.js";
import { makeConfig, type ClientConfig } from "./config.js";
import type { ImageFormat } from "./jpeg.js";
import { createApp } from "./app.js";

export function canvasCodec(): ImageCodec {
  return {
    async decode(bytes: Uint8Array, format: ImageFormat): Promise<RawImage> {
      const copy = new Uint8Array(bytes);
      const blob = new Blob([copy.buffer], { type: `image/${format}` });
      let bitmap: ImageBitmap;
      try {
        bitmap = await createImageBitmap(blob);
      } catch (err) {
        throw new CodecError(`browser cannot decode this ${format}: ${String(err)}`);
      }
      const canvas = new OffscreenCanvas(bitmap.width, bitmap.height);
      const ctx = canvas.getContext("2d");
      if (ctx === null) throw new CodecError("no 2d context");
      ctx.drawImage(bitmap, 0, 0);
      const data = ctx.getImageData(0, 0, bitmap.width, bitmap.height);
      bitmap.close();
      return { width: data.width, height: data.height, rgba: new Uint8Array(data.data.buffer) };
    },

    async encodeJpeg(image: RawImage, quality: number): Promise<Uint8Array> {
      const canvas = new OffscreenCanvas(image.width, image.height);
      const ctx = canvas.getContext("2d");
      if (ctx === null) throw new CodecError("no 2d context");
      ctx.putImageData(new ImageData(new Uint8ClampedArray(image.rgba), image.width, image.height), 0, 0);
      let blob: Blob;
      try {
        blob = await canvas.convertToBlob({ type: "image/jpeg", quality: quality / 100 });
      } catch (err) {
        throw new CodecError(`jpeg encode failed: ${String(err)}`);
      }
      return new Uint8Array(await blob.arrayBuffer());
    },
  };
}

function readConfig(doc: Document): ClientConfig {
  const node = doc.getElementById("app-config");
  if (node === null || !node.textContent) return makeConfig();
  try {
    return makeConfig(JSON.parse(node.textContent));
  } catch {
    return makeConfig();
  }
}

export async function boot(root: HTMLElement): Promise<void> {
  const doc = root.ownerDocument;
  const win = doc.defaultView as Window;
  const config = readConfig(doc);
  const api = new ApiClient(config.apiBase);
  const session = new AuthSession();
  const pending = sessionPendingStore(win.sessionStorage);
  const app = createApp(root, { config, api, session, codec: canvasCodec(), pending });

  // Returning leg of the provider redirect carries ?code=...&state=...
  const params = new URLSearchParams(win.location.search);
  if (config.oidc !== undefined && params.has("code") && params.has("state")) {
    try {
      await session.completeLogin(config.oidc, params, pending);
      api.token = session.token;
      win.history.replaceState(null, "", win.location.pathname + win.location.hash);
    } catch (err) {
      console.error("sign-in failed", err);
    }
  }

  win.addEventListener("hashchange", () => {
    void app.navigate(win.location.hash);
  });
  win.addEventListener("resize", () => {
    app.applyLayout(win.innerWidth);
  });
  app.applyLayout(win.innerWidth);
  await app.refreshSiteList();
  await app.navigate(win.location.hash);
}
