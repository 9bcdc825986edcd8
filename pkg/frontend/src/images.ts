/** Client-side image intake: validation and size-reducing re-encode.
 *
 * Order is fixed per image: SELECTED -> VALID (or INVALID) -> recompression,
 * and only then may the bytes travel. The uploader enforces the same rule
 * again by refusing anything without a prepared payload.
 */

import type { ImageCodec, RawImage } from "./codec.js";
import { CodecError } from "./codec.js";
import type { ClientConfig } from "./config.js";
import {
  exifDateTime,
  extractExifApp1,
  imageDimensions,
  sniffFormat,
  spliceExifApp1,
  type ImageFormat,
} from "./jpeg.js";
import { downscaleTo } from "./raster.js";

export type ImageStatus = "SELECTED" | "VALID" | "INVALID" | "UPLOADING" | "DONE" | "FAILED";

export interface ClientImage {
  name: string;
  original: Uint8Array;
  format: ImageFormat | null;
  width: number | null;
  height: number | null;
  /** Raw Exif APP1 segment of the original, carried verbatim into the re-encode. */
  exif: Uint8Array | null;
  /** Missing Exif is a warning, never a rejection. */
  exifWarning: boolean;
  recompressed: Uint8Array | null;
  /** Bytes the uploader will send: the smaller of original and recompressed. */
  payload: Uint8Array | null;
  status: ImageStatus;
  /** Machine-readable reason for INVALID or FAILED. */
  reason: string | null;
  message: string | null;
  takenAt: string | null;
  attempts: number;
  history: ImageStatus[];
}

export function clientImage(name: string, bytes: Uint8Array): ClientImage {
  return {
    name,
    original: bytes,
    format: null,
    width: null,
    height: null,
    exif: null,
    exifWarning: false,
    recompressed: null,
    payload: null,
    status: "SELECTED",
    reason: null,
    message: null,
    takenAt: null,
    attempts: 0,
    history: ["SELECTED"],
  };
}

export function setStatus(
  image: ClientImage,
  status: ImageStatus,
  reason: string | null = null,
  message: string | null = null,
): ClientImage {
  image.status = status;
  image.reason = reason;
  image.message = message;
  image.history.push(status);
  return image;
}

/** Magic, dimensions, Exif presence. HEIC defers the size check to decode. */
export function validateImage(image: ClientImage, config: ClientConfig): ClientImage {
  const format = sniffFormat(image.original);
  if (format === null) {
    return setStatus(image, "INVALID", "UNSUPPORTED", "not a JPEG, PNG, or HEIC file");
  }
  image.format = format;
  const dims = imageDimensions(image.original, format);
  if (dims !== null) {
    image.width = dims.width;
    image.height = dims.height;
    if (Math.min(dims.width, dims.height) < config.minShortSide) {
      return setStatus(
        image,
        "INVALID",
        "TOO_SMALL",
        `short side ${Math.min(dims.width, dims.height)}px is under ${config.minShortSide}px`,
      );
    }
  }
  if (format === "jpeg") {
    image.exif = extractExifApp1(image.original);
    image.takenAt = image.exif === null ? null : exifDateTime(image.exif);
  }
  image.exifWarning = image.exif === null;
  return setStatus(image, "VALID");
}

function pickPayload(image: ClientImage): void {
  // Never upload more bytes than the smaller encoding.
  if (image.recompressed !== null && image.recompressed.length < image.original.length) {
    image.payload = image.recompressed;
  } else {
    image.payload = image.original;
  }
}

/** Re-encode a VALID image to capped JPEG, splicing the original Exif back in.
 *
 * Codec failures fall back to uploading the original bytes unchanged.
 */
export async function recompressImage(
  image: ClientImage,
  codec: ImageCodec,
  config: ClientConfig,
): Promise<ClientImage> {
  if (image.status !== "VALID" || image.format === null) return image;
  let raw: RawImage;
  try {
    raw = await codec.decode(image.original, image.format);
  } catch (err) {
    if (err instanceof CodecError) {
      pickPayload(image); // payload = original
      return image;
    }
    throw err;
  }
  image.width = raw.width;
  image.height = raw.height;
  if (Math.min(raw.width, raw.height) < config.minShortSide) {
    return setStatus(
      image,
      "INVALID",
      "TOO_SMALL",
      `short side ${Math.min(raw.width, raw.height)}px is under ${config.minShortSide}px`,
    );
  }
  try {
    const scaled = downscaleTo(raw, config.maxLongSide);
    let encoded = await codec.encodeJpeg(scaled, config.jpegQuality);
    if (image.exif !== null) {
      encoded = spliceExifApp1(encoded, image.exif);
    }
    image.recompressed = encoded;
  } catch (err) {
    if (!(err instanceof CodecError)) throw err;
    image.recompressed = null;
  }
  pickPayload(image);
  return image;
}

/** Fraction of original bytes saved by the chosen payload, if prepared. */
export function sizeReduction(image: ClientImage): number | null {
  if (image.payload === null || image.original.length === 0) return null;
  return 1 - image.payload.length / image.original.length;
}

/** Validate and recompress a batch, reporting progress per image. */
export async function prepareImages(
  files: Array<{ name: string; bytes: Uint8Array }>,
  codec: ImageCodec,
  config: ClientConfig,
  onUpdate?: (image: ClientImage) => void,
): Promise<ClientImage[]> {
  const out: ClientImage[] = [];
  for (const file of files) {
    const image = clientImage(file.name, file.bytes);
    validateImage(image, config);
    onUpdate?.(image);
    if (image.status === "VALID") {
      await recompressImage(image, codec, config);
      onUpdate?.(image);
    }
    out.push(image);
  }
  return out;
}
