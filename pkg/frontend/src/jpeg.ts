/** Byte-level JPEG/PNG/HEIC inspection.
 *
 * Everything here works on raw Uint8Arrays so the same code runs in the
 * browser and in node tests. The JPEG side understands just enough of the
 * segment structure to find dimensions and to carry the Exif APP1 segment
 * from an original file into a re-encoded one, byte for byte.
 */

export type ImageFormat = "jpeg" | "png" | "heic";

const SOI = 0xd8;
const SOS = 0xda;
const EOI = 0xd9;
const APP0 = 0xe0;
const APP1 = 0xe1;

export interface JpegSegment {
  /** Marker byte (second byte of the FFxx pair). */
  marker: number;
  /** Offset of the leading 0xFF in the file. */
  offset: number;
  /** Total byte span including marker and length field. */
  size: number;
}

function u16be(bytes: Uint8Array, at: number): number {
  return (bytes[at] << 8) | bytes[at + 1];
}

export function sniffFormat(bytes: Uint8Array): ImageFormat | null {
  if (bytes.length >= 3 && bytes[0] === 0xff && bytes[1] === SOI && bytes[2] === 0xff) {
    return "jpeg";
  }
  if (
    bytes.length >= 8 &&
    bytes[0] === 0x89 &&
    bytes[1] === 0x50 &&
    bytes[2] === 0x4e &&
    bytes[3] === 0x47 &&
    bytes[4] === 0x0d &&
    bytes[5] === 0x0a &&
    bytes[6] === 0x1a &&
    bytes[7] === 0x0a
  ) {
    return "png";
  }
  // ISO-BMFF: size + "ftyp" + major brand
  if (bytes.length >= 12 && bytes[4] === 0x66 && bytes[5] === 0x74 && bytes[6] === 0x79 && bytes[7] === 0x70) {
    const brand = String.fromCharCode(bytes[8], bytes[9], bytes[10], bytes[11]);
    if (["heic", "heix", "hevc", "hevx", "mif1", "msf1"].includes(brand)) {
      return "heic";
    }
  }
  return null;
}

/** Walk marker segments from SOI up to (and including) SOS. */
export function* jpegSegments(bytes: Uint8Array): Generator<JpegSegment> {
  if (sniffFormat(bytes) !== "jpeg") return;
  let at = 2; // past SOI
  while (at + 1 < bytes.length) {
    if (bytes[at] !== 0xff) return; // desynced; stop rather than guess
    let marker = bytes[at + 1];
    let start = at;
    while (marker === 0xff && start + 2 < bytes.length) {
      start += 1; // fill bytes before a marker are legal
      marker = bytes[start + 1];
    }
    if (marker === EOI || marker === 0x01 || (marker >= 0xd0 && marker <= 0xd7)) {
      yield { marker, offset: start, size: 2 };
      at = start + 2;
      continue;
    }
    if (start + 4 > bytes.length) return;
    const length = u16be(bytes, start + 2);
    if (length < 2 || start + 2 + length > bytes.length) return;
    yield { marker, offset: start, size: 2 + length };
    if (marker === SOS) return; // entropy-coded data follows
    at = start + 2 + length;
  }
}

function isExifApp1(bytes: Uint8Array, seg: JpegSegment): boolean {
  if (seg.marker !== APP1 || seg.size < 10) return false;
  const p = seg.offset + 4;
  return (
    bytes[p] === 0x45 && // E
    bytes[p + 1] === 0x78 && // x
    bytes[p + 2] === 0x69 && // i
    bytes[p + 3] === 0x66 && // f
    bytes[p + 4] === 0x00 &&
    bytes[p + 5] === 0x00
  );
}

/** Return the complete Exif APP1 segment (marker through payload), or null. */
export function extractExifApp1(bytes: Uint8Array): Uint8Array | null {
  for (const seg of jpegSegments(bytes)) {
    if (isExifApp1(bytes, seg)) {
      return bytes.slice(seg.offset, seg.offset + seg.size);
    }
  }
  return null;
}

/** Insert an APP1 segment right after SOI, dropping any Exif APP1 already there. */
export function spliceExifApp1(jpeg: Uint8Array, app1: Uint8Array): Uint8Array {
  const drops: Array<[number, number]> = [];
  for (const seg of jpegSegments(jpeg)) {
    if (isExifApp1(jpeg, seg)) drops.push([seg.offset, seg.offset + seg.size]);
  }
  let kept = jpeg;
  if (drops.length > 0) {
    const total = jpeg.length - drops.reduce((n, [a, b]) => n + (b - a), 0);
    kept = new Uint8Array(total);
    let src = 0;
    let dst = 0;
    for (const [a, b] of drops) {
      kept.set(jpeg.subarray(src, a), dst);
      dst += a - src;
      src = b;
    }
    kept.set(jpeg.subarray(src), dst);
  }
  const out = new Uint8Array(kept.length + app1.length);
  out.set(kept.subarray(0, 2), 0);
  out.set(app1, 2);
  out.set(kept.subarray(2), 2 + app1.length);
  return out;
}

/** Dimensions from the first SOF0/1/2 frame header. */
export function jpegDimensions(bytes: Uint8Array): { width: number; height: number } | null {
  for (const seg of jpegSegments(bytes)) {
    if (seg.marker === 0xc0 || seg.marker === 0xc1 || seg.marker === 0xc2) {
      const p = seg.offset + 4;
      return { height: u16be(bytes, p + 1), width: u16be(bytes, p + 3) };
    }
  }
  return null;
}

export function pngDimensions(bytes: Uint8Array): { width: number; height: number } | null {
  // IHDR is mandatory and first: width at 16, height at 20, big-endian u32
  if (bytes.length < 24) return null;
  const view = new DataView(bytes.buffer, bytes.byteOffset, bytes.byteLength);
  return { width: view.getUint32(16), height: view.getUint32(20) };
}

/** Header-level dimensions; HEIC needs a full decode so it returns null. */
export function imageDimensions(
  bytes: Uint8Array,
  format: ImageFormat,
): { width: number; height: number } | null {
  if (format === "jpeg") return jpegDimensions(bytes);
  if (format === "png") return pngDimensions(bytes);
  return null;
}

// -- Exif timestamp -------------------------------------------------------------------

const TAG_DATETIME = 0x0132;
const TAG_EXIF_IFD = 0x8769;
const TAG_DATETIME_ORIGINAL = 0x9003;

interface TiffReader {
  u16(at: number): number;
  u32(at: number): number;
  bytes: Uint8Array;
}

function tiffReader(tiff: Uint8Array): TiffReader | null {
  if (tiff.length < 8) return null;
  const little = tiff[0] === 0x49 && tiff[1] === 0x49;
  const big = tiff[0] === 0x4d && tiff[1] === 0x4d;
  if (!little && !big) return null;
  const view = new DataView(tiff.buffer, tiff.byteOffset, tiff.byteLength);
  const r: TiffReader = {
    u16: (at) => view.getUint16(at, little),
    u32: (at) => view.getUint32(at, little),
    bytes: tiff,
  };
  if (r.u16(2) !== 42) return null;
  return r;
}

function findTag(r: TiffReader, ifdOffset: number, tag: number): number | null {
  if (ifdOffset + 2 > r.bytes.length) return null;
  const count = r.u16(ifdOffset);
  for (let i = 0; i < count; i++) {
    const entry = ifdOffset + 2 + i * 12;
    if (entry + 12 > r.bytes.length) return null;
    if (r.u16(entry) === tag) return entry;
  }
  return null;
}

function asciiValue(r: TiffReader, entry: number): string | null {
  const type = r.u16(entry + 2);
  const count = r.u32(entry + 4);
  if (type !== 2 || count === 0) return null;
  const at = count <= 4 ? entry + 8 : r.u32(entry + 8);
  if (at + count > r.bytes.length) return null;
  let end = at + count;
  while (end > at && r.bytes[end - 1] === 0) end -= 1;
  return String.fromCharCode(...r.bytes.subarray(at, end));
}

/** DateTimeOriginal (falling back to DateTime) from a JPEG or a bare APP1 segment. */
export function exifDateTime(bytesOrJpeg: Uint8Array): string | null {
  let app1 = bytesOrJpeg;
  if (sniffFormat(bytesOrJpeg) === "jpeg") {
    const found = extractExifApp1(bytesOrJpeg);
    if (found === null) return null;
    app1 = found;
  }
  if (app1.length < 12) return null;
  const tiff = app1.subarray(10); // past FFE1 len "Exif\0\0"
  const r = tiffReader(tiff);
  if (r === null) return null;
  const ifd0 = r.u32(4);
  const exifPtr = findTag(r, ifd0, TAG_EXIF_IFD);
  if (exifPtr !== null) {
    const sub = findTag(r, r.u32(exifPtr + 8), TAG_DATETIME_ORIGINAL);
    if (sub !== null) {
      const v = asciiValue(r, sub);
      if (v !== null) return v;
    }
  }
  const plain = findTag(r, ifd0, TAG_DATETIME);
  return plain === null ? null : asciiValue(r, plain);
}
