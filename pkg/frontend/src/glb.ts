/** Binary glTF parsing for the model viewer.
 *
 * Reads the single-buffer GLB the platform serves: header, JSON + BIN
 * chunks, the first triangle primitive, optional embedded JPEG texture.
 * Normalized-integer attributes (16-bit quantization) are expanded back to
 * floats, and the node's translation/scale dequantization transform is
 * applied so positions come out in world units.
 */

const GLB_MAGIC = 0x46546c67;
const CHUNK_JSON = 0x4e4f534a;
const CHUNK_BIN = 0x004e4942;

const COMPONENT_SIZES: Record<number, number> = {
  5120: 1,
  5121: 1,
  5122: 2,
  5123: 2,
  5125: 4,
  5126: 4,
};

const TYPE_WIDTHS: Record<string, number> = { SCALAR: 1, VEC2: 2, VEC3: 3, VEC4: 4 };

export interface ModelBounds {
  min: [number, number, number];
  max: [number, number, number];
}

export interface ParsedModel {
  json: any;
  positions: Float32Array;
  indices: Uint32Array;
  uvs: Float32Array | null;
  textureJpeg: Uint8Array | null;
  vertexCount: number;
  triangleCount: number;
  bounds: ModelBounds;
}

export class GlbError extends Error {}

interface Chunks {
  json: any;
  bin: Uint8Array;
}

function splitChunks(bytes: Uint8Array): Chunks {
  if (bytes.length < 12) throw new GlbError("file shorter than a GLB header");
  const view = new DataView(bytes.buffer, bytes.byteOffset, bytes.byteLength);
  if (view.getUint32(0, true) !== GLB_MAGIC) throw new GlbError("bad magic");
  if (view.getUint32(4, true) !== 2) throw new GlbError("unsupported container version");
  const total = view.getUint32(8, true);
  if (total > bytes.length) throw new GlbError("declared length exceeds data");

  let at = 12;
  let json: any = null;
  let bin: Uint8Array | null = null;
  while (at + 8 <= total) {
    const size = view.getUint32(at, true);
    const kind = view.getUint32(at + 4, true);
    const body = bytes.subarray(at + 8, at + 8 + size);
    if (kind === CHUNK_JSON && json === null) {
      json = JSON.parse(new TextDecoder().decode(body));
    } else if (kind === CHUNK_BIN && bin === null) {
      bin = body;
    }
    at += 8 + size;
  }
  if (json === null) throw new GlbError("missing JSON chunk");
  return { json, bin: bin ?? new Uint8Array(0) };
}

function viewSlice(chunks: Chunks, viewIndex: number): { data: Uint8Array; stride: number | null } {
  const view = chunks.json.bufferViews?.[viewIndex];
  if (!view) throw new GlbError(`no bufferView ${viewIndex}`);
  const start = view.byteOffset ?? 0;
  return {
    data: chunks.bin.subarray(start, start + view.byteLength),
    stride: view.byteStride ?? null,
  };
}

function readAccessor(chunks: Chunks, index: number): { values: Float32Array; width: number } {
  const acc = chunks.json.accessors?.[index];
  if (!acc) throw new GlbError(`no accessor ${index}`);
  const width = TYPE_WIDTHS[acc.type];
  const compSize = COMPONENT_SIZES[acc.componentType];
  if (!width || !compSize) throw new GlbError(`unsupported accessor layout on ${index}`);
  const { data, stride } = viewSlice(chunks, acc.bufferView);
  const step = stride ?? width * compSize;
  const base = acc.byteOffset ?? 0;
  const view = new DataView(data.buffer, data.byteOffset, data.byteLength);
  const out = new Float32Array(acc.count * width);
  const normalized = acc.normalized === true;
  for (let i = 0; i < acc.count; i++) {
    for (let c = 0; c < width; c++) {
      const at = base + i * step + c * compSize;
      let value: number;
      switch (acc.componentType) {
        case 5121:
          value = view.getUint8(at);
          if (normalized) value /= 255;
          break;
        case 5123:
          value = view.getUint16(at, true);
          if (normalized) value /= 65535;
          break;
        case 5125:
          value = view.getUint32(at, true);
          break;
        case 5126:
          value = view.getFloat32(at, true);
          break;
        default:
          throw new GlbError(`unsupported component type ${acc.componentType}`);
      }
      out[i * width + c] = value;
    }
  }
  return { values: out, width };
}

export function parseGlb(bytes: Uint8Array): ParsedModel {
  const chunks = splitChunks(bytes);
  const json = chunks.json;
  const primitive = json.meshes?.[0]?.primitives?.[0];
  if (!primitive) throw new GlbError("no mesh primitive");

  const pos = readAccessor(chunks, primitive.attributes.POSITION);
  if (pos.width !== 3) throw new GlbError("POSITION is not VEC3");
  const positions = pos.values;

  // Dequantization transform rides on the node that references the mesh.
  const node = (json.nodes ?? []).find((n: any) => n.mesh === 0) ?? {};
  const scale: number[] = node.scale ?? [1, 1, 1];
  const shift: number[] = node.translation ?? [0, 0, 0];
  for (let i = 0; i < positions.length; i += 3) {
    positions[i] = positions[i] * scale[0] + shift[0];
    positions[i + 1] = positions[i + 1] * scale[1] + shift[1];
    positions[i + 2] = positions[i + 2] * scale[2] + shift[2];
  }

  let indices: Uint32Array;
  if (primitive.indices !== undefined) {
    const idx = readAccessor(chunks, primitive.indices);
    indices = Uint32Array.from(idx.values);
  } else {
    indices = Uint32Array.from({ length: positions.length / 3 }, (_, i) => i);
  }

  let uvs: Float32Array | null = null;
  if (primitive.attributes.TEXCOORD_0 !== undefined) {
    uvs = readAccessor(chunks, primitive.attributes.TEXCOORD_0).values;
  }

  let textureJpeg: Uint8Array | null = null;
  const image = json.images?.[0];
  if (image && image.bufferView !== undefined) {
    textureJpeg = viewSlice(chunks, image.bufferView).data.slice();
  }

  const min: [number, number, number] = [Infinity, Infinity, Infinity];
  const max: [number, number, number] = [-Infinity, -Infinity, -Infinity];
  for (let i = 0; i < positions.length; i += 3) {
    for (let c = 0; c < 3; c++) {
      const v = positions[i + c];
      if (v < min[c]) min[c] = v;
      if (v > max[c]) max[c] = v;
    }
  }
  if (positions.length === 0) {
    min.fill(0);
    max.fill(0);
  }

  return {
    json,
    positions,
    indices,
    uvs,
    textureJpeg,
    vertexCount: positions.length / 3,
    triangleCount: indices.length / 3,
    bounds: { min, max },
  };
}
