/** RGBA downscaling used before re-encoding oversized photos.
 *
 * Separable box filter with fractional bin edges: every destination pixel
 * averages exactly the source span it covers, so results are deterministic
 * and alias-free for any ratio <= 1.
 */

import type { RawImage } from "./codec.js";

function spans(srcLen: number, dstLen: number): Array<Array<[number, number]>> {
  // For each dest index, the list of (src index, weight) pairs covering it.
  const out: Array<Array<[number, number]>> = [];
  const step = srcLen / dstLen;
  for (let d = 0; d < dstLen; d++) {
    const lo = d * step;
    const hi = (d + 1) * step;
    const pairs: Array<[number, number]> = [];
    for (let s = Math.floor(lo); s < hi && s < srcLen; s++) {
      const w = Math.min(hi, s + 1) - Math.max(lo, s);
      if (w > 0) pairs.push([s, w]);
    }
    out.push(pairs);
  }
  return out;
}

function resampleAxis(
  src: Float64Array,
  width: number,
  height: number,
  dstWidth: number,
): Float64Array {
  // Shrinks rows from `width` to `dstWidth`; callers transpose for columns.
  const table = spans(width, dstWidth);
  const out = new Float64Array(dstWidth * height * 4);
  for (let y = 0; y < height; y++) {
    const rowIn = y * width * 4;
    const rowOut = y * dstWidth * 4;
    for (let x = 0; x < dstWidth; x++) {
      let r = 0;
      let g = 0;
      let b = 0;
      let a = 0;
      let total = 0;
      for (const [s, w] of table[x]) {
        const p = rowIn + s * 4;
        r += src[p] * w;
        g += src[p + 1] * w;
        b += src[p + 2] * w;
        a += src[p + 3] * w;
        total += w;
      }
      const q = rowOut + x * 4;
      out[q] = r / total;
      out[q + 1] = g / total;
      out[q + 2] = b / total;
      out[q + 3] = a / total;
    }
  }
  return out;
}

function transpose(src: Float64Array, width: number, height: number): Float64Array {
  const out = new Float64Array(src.length);
  for (let y = 0; y < height; y++) {
    for (let x = 0; x < width; x++) {
      const p = (y * width + x) * 4;
      const q = (x * height + y) * 4;
      out[q] = src[p];
      out[q + 1] = src[p + 1];
      out[q + 2] = src[p + 2];
      out[q + 3] = src[p + 3];
    }
  }
  return out;
}

/** Scale so the longest side is at most `maxLongSide`; smaller inputs pass through. */
export function downscaleTo(image: RawImage, maxLongSide: number): RawImage {
  if (maxLongSide < 1) throw new Error("maxLongSide must be positive");
  const long = Math.max(image.width, image.height);
  if (long <= maxLongSide) return image;
  const scale = maxLongSide / long;
  const dstW = Math.max(1, Math.round(image.width * scale));
  const dstH = Math.max(1, Math.round(image.height * scale));

  let work: Float64Array = Float64Array.from(image.rgba);
  work = resampleAxis(work, image.width, image.height, dstW);
  work = transpose(work, dstW, image.height);
  work = resampleAxis(work, image.height, dstW, dstH);
  work = transpose(work, dstH, dstW);

  const rgba = new Uint8Array(dstW * dstH * 4);
  for (let i = 0; i < rgba.length; i++) {
    rgba[i] = Math.min(255, Math.max(0, Math.round(work[i])));
  }
  return { width: dstW, height: dstH, rgba };
}
