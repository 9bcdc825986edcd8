/** Site model viewer: fetches the served GLB, renders it into a canvas,
 * and fills the metadata panel. A 404 (nothing published yet) swaps in a
 * call-to-action pointing at the contribution page instead.
 */

import { ApiClient, ApiError, type SiteItem } from "./api.js";
import { parseGlb, type ParsedModel } from "./glb.js";
import { Frame, OrbitCamera, renderModel } from "./render.js";

export interface ViewerOptions {
  width?: number;
  height?: number;
  doc?: Document;
}

export interface ViewerHandle {
  container: HTMLElement;
  canvas: HTMLCanvasElement | null;
  metadata: HTMLElement;
  model: ParsedModel | null;
  camera: OrbitCamera | null;
  frame: Frame | null;
  /** True when the page shows the "contribute images" call to action. */
  showsCta: boolean;
  rerender(): void;
}

function present(frame: Frame, canvas: HTMLCanvasElement): void {
  // jsdom has no 2d context; rendering stays observable through handle.frame.
  const ctx = canvas.getContext("2d");
  if (ctx === null) return;
  const pixels = new Uint8ClampedArray(frame.data); // fresh ArrayBuffer for ImageData
  ctx.putImageData(new ImageData(pixels, frame.width, frame.height), 0, 0);
}

function fillMetadata(panel: HTMLElement, api: ApiClient, site: SiteItem, doc: Document): void {
  panel.innerHTML = "";
  const title = doc.createElement("h2");
  title.textContent = site.name;
  panel.appendChild(title);

  const place = doc.createElement("p");
  place.className = "site-place";
  place.textContent = [site.locality, site.district, site.state, site.country]
    .filter((part) => part !== "")
    .join(", ");
  panel.appendChild(place);

  if (site.description) {
    const desc = doc.createElement("p");
    desc.textContent = site.description;
    panel.appendChild(desc);
  }

  if (site.published_at !== null) {
    const when = doc.createElement("p");
    when.className = "published-at";
    when.textContent = `published ${new Date(site.published_at * 1000).toISOString().slice(0, 10)}`;
    panel.appendChild(when);
  }

  if (site.ark !== null) {
    const link = doc.createElement("a");
    link.className = "ark-link";
    link.href = api.arkHref(site.ark);
    link.textContent = site.ark;
    panel.appendChild(link);
  }
}

export async function mountViewer(
  container: HTMLElement,
  api: ApiClient,
  site: SiteItem,
  options: ViewerOptions = {},
): Promise<ViewerHandle> {
  const doc = options.doc ?? container.ownerDocument;
  const width = options.width ?? 640;
  const height = options.height ?? 480;
  container.innerHTML = "";

  const metadata = doc.createElement("aside");
  metadata.className = "site-metadata";
  fillMetadata(metadata, api, site, doc);

  const handle: ViewerHandle = {
    container,
    canvas: null,
    metadata,
    model: null,
    camera: null,
    frame: null,
    showsCta: false,
    rerender() {
      if (this.model === null || this.camera === null || this.canvas === null) return;
      this.frame = renderModel(this.model, this.camera, width, height);
      present(this.frame, this.canvas);
    },
  };

  let bytes: Uint8Array;
  try {
    const got = await api.fetchModel(site.verbose_id || site.id);
    bytes = got.bytes as Uint8Array;
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      const cta = doc.createElement("div");
      cta.className = "cta";
      const note = doc.createElement("p");
      note.textContent = "No model yet. This site needs more photographs.";
      const go = doc.createElement("a");
      go.href = `#/contribute/${site.verbose_id || site.id}`;
      go.textContent = "Contribute images";
      cta.append(note, go);
      container.append(metadata, cta);
      handle.showsCta = true;
      return handle;
    }
    throw err;
  }

  handle.model = parseGlb(bytes);
  handle.camera = new OrbitCamera(handle.model.bounds);

  const canvas = doc.createElement("canvas");
  canvas.width = width;
  canvas.height = height;
  canvas.className = "model-canvas";
  handle.canvas = canvas;

  // Orbit on drag, zoom on wheel.
  let dragging = false;
  let lastX = 0;
  let lastY = 0;
  canvas.addEventListener("mousedown", (ev) => {
    dragging = true;
    lastX = ev.clientX;
    lastY = ev.clientY;
  });
  canvas.addEventListener("mousemove", (ev) => {
    if (!dragging) return;
    handle.camera?.orbit(ev.clientX - lastX, ev.clientY - lastY);
    lastX = ev.clientX;
    lastY = ev.clientY;
    handle.rerender();
  });
  doc.addEventListener("mouseup", () => {
    dragging = false;
  });
  canvas.addEventListener("wheel", (ev) => {
    handle.camera?.zoom(ev.deltaY > 0 ? 1.1 : 0.9);
    handle.rerender();
  });

  container.append(metadata, canvas);
  handle.rerender();
  return handle;
}
