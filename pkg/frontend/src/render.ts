/** Dependency-free model rendering: orbit camera plus a wireframe
 * rasterizer that draws into a plain RGBA buffer. The browser page blits
 * the buffer to a canvas; tests inspect it directly, so "does it render"
 * is checkable without a GPU.
 */

import type { ModelBounds, ParsedModel } from "./glb.js";

type Vec3 = [number, number, number];

function sub(a: Vec3, b: Vec3): Vec3 {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
}

function cross(a: Vec3, b: Vec3): Vec3 {
  return [
    a[1] * b[2] - a[2] * b[1],
    a[2] * b[0] - a[0] * b[2],
    a[0] * b[1] - a[1] * b[0],
  ];
}

function normalize(v: Vec3): Vec3 {
  const n = Math.hypot(v[0], v[1], v[2]) || 1;
  return [v[0] / n, v[1] / n, v[2] / n];
}

function dot(a: Vec3, b: Vec3): number {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

export class OrbitCamera {
  theta = 0.7; // azimuth, radians
  phi = 1.1; // inclination from +y, clamped off the poles
  radius: number;
  target: Vec3;
  fovY = (50 * Math.PI) / 180;
  private baseRadius: number;

  constructor(bounds: ModelBounds) {
    const center: Vec3 = [
      (bounds.min[0] + bounds.max[0]) / 2,
      (bounds.min[1] + bounds.max[1]) / 2,
      (bounds.min[2] + bounds.max[2]) / 2,
    ];
    const diag = Math.hypot(
      bounds.max[0] - bounds.min[0],
      bounds.max[1] - bounds.min[1],
      bounds.max[2] - bounds.min[2],
    );
    this.target = center;
    this.baseRadius = Math.max(diag, 1e-6) * 1.6;
    this.radius = this.baseRadius;
  }

  orbit(dx: number, dy: number): void {
    this.theta += dx * 0.01;
    this.phi = Math.min(Math.PI - 0.05, Math.max(0.05, this.phi + dy * 0.01));
  }

  zoom(factor: number): void {
    this.radius = Math.min(
      this.baseRadius * 20,
      Math.max(this.baseRadius * 0.05, this.radius * factor),
    );
  }

  eye(): Vec3 {
    return [
      this.target[0] + this.radius * Math.sin(this.phi) * Math.cos(this.theta),
      this.target[1] + this.radius * Math.cos(this.phi),
      this.target[2] + this.radius * Math.sin(this.phi) * Math.sin(this.theta),
    ];
  }
}

export interface Frame {
  width: number;
  height: number;
  /** RGBA, row-major; background stays fully transparent. */
  data: Uint8ClampedArray;
}

function drawLine(
  frame: Frame,
  x0: number,
  y0: number,
  x1: number,
  y1: number,
  shade: number,
): void {
  // Bresenham over integer pixel coordinates.
  let ax = Math.round(x0);
  let ay = Math.round(y0);
  const bx = Math.round(x1);
  const by = Math.round(y1);
  const dx = Math.abs(bx - ax);
  const dy = -Math.abs(by - ay);
  const sx = ax < bx ? 1 : -1;
  const sy = ay < by ? 1 : -1;
  let err = dx + dy;
  for (;;) {
    if (ax >= 0 && ax < frame.width && ay >= 0 && ay < frame.height) {
      const p = (ay * frame.width + ax) * 4;
      if (shade > frame.data[p]) {
        frame.data[p] = shade;
        frame.data[p + 1] = shade;
        frame.data[p + 2] = Math.min(255, shade + 30);
      }
      frame.data[p + 3] = 255;
    }
    if (ax === bx && ay === by) return;
    const e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      ax += sx;
    }
    if (e2 <= dx) {
      err += dx;
      ay += sy;
    }
  }
}

export function renderModel(
  model: Pick<ParsedModel, "positions" | "indices">,
  camera: OrbitCamera,
  width: number,
  height: number,
): Frame {
  const frame: Frame = { width, height, data: new Uint8ClampedArray(width * height * 4) };
  const eye = camera.eye();
  const forward = normalize(sub(camera.target, eye));
  const right = normalize(cross(forward, [0, 1, 0]));
  const up = cross(right, forward);
  const focal = height / (2 * Math.tan(camera.fovY / 2));
  const near = camera.radius * 1e-3;

  const n = model.positions.length / 3;
  const px = new Float32Array(n);
  const py = new Float32Array(n);
  const depth = new Float32Array(n); // camera-space distance along forward
  for (let i = 0; i < n; i++) {
    const world: Vec3 = [
      model.positions[i * 3],
      model.positions[i * 3 + 1],
      model.positions[i * 3 + 2],
    ];
    const rel = sub(world, eye);
    const z = dot(rel, forward);
    depth[i] = z;
    if (z <= near) continue;
    px[i] = width / 2 + (dot(rel, right) / z) * focal;
    py[i] = height / 2 - (dot(rel, up) / z) * focal;
  }

  const shadeFor = (a: number, b: number): number => {
    const z = (depth[a] + depth[b]) / 2;
    const t = Math.min(1, Math.max(0, z / (camera.radius * 2)));
    return Math.round(235 - 130 * t); // nearer edges brighter
  };

  const tris = model.indices.length / 3;
  for (let t = 0; t < tris; t++) {
    const a = model.indices[t * 3];
    const b = model.indices[t * 3 + 1];
    const c = model.indices[t * 3 + 2];
    if (depth[a] <= near || depth[b] <= near || depth[c] <= near) continue;
    drawLine(frame, px[a], py[a], px[b], py[b], shadeFor(a, b));
    drawLine(frame, px[b], py[b], px[c], py[c], shadeFor(b, c));
    drawLine(frame, px[c], py[c], px[a], py[a], shadeFor(c, a));
  }
  return frame;
}

/** Fraction of pixels any edge touched; > 0 means something was drawn. */
export function inkRatio(frame: Frame): number {
  let ink = 0;
  for (let i = 3; i < frame.data.length; i += 4) {
    if (frame.data[i] !== 0) ink += 1;
  }
  return ink / (frame.width * frame.height);
}
