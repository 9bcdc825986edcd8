/** Pixel codec abstraction.
 *
 * The browser build decodes and encodes through canvas; tests and node
 * tooling use the pure-JS JPEG codec. Both sides speak RGBA8.
 */

import * as jpeg from "jpeg-js";

import type { ImageFormat } from "./jpeg.js";

export interface RawImage {
  width: number;
  height: number;
  rgba: Uint8Array;
}

export class CodecError extends Error {}

export interface ImageCodec {
  decode(bytes: Uint8Array, format: ImageFormat): Promise<RawImage>;
  encodeJpeg(image: RawImage, quality: number): Promise<Uint8Array>;
}

/** JPEG-only codec; non-JPEG input raises CodecError. */
export function jpegJsCodec(): ImageCodec {
  return {
    async decode(bytes: Uint8Array, format: ImageFormat): Promise<RawImage> {
      if (format !== "jpeg") {
        throw new CodecError(`cannot decode ${format} without a browser canvas`);
      }
      let out;
      try {
        out = jpeg.decode(bytes, { useTArray: true, maxMemoryUsageInMB: 2048 });
      } catch (err) {
        throw new CodecError(`jpeg decode failed: ${String(err)}`);
      }
      return { width: out.width, height: out.height, rgba: new Uint8Array(out.data) };
    },

    async encodeJpeg(image: RawImage, quality: number): Promise<Uint8Array> {
      if (image.rgba.length !== image.width * image.height * 4) {
        throw new CodecError("rgba buffer does not match dimensions");
      }
      const out = jpeg.encode(
        { width: image.width, height: image.height, data: image.rgba },
        quality,
      );
      return new Uint8Array(out.data);
    },
  };
}
