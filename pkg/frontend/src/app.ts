/** Single-page application shell.
 *
 * Hash router over five pages: home (site request form), site viewer,
 * contribution flow, moderation (operators only), and sign-in. The frame
 * is three columns; under 768 px it collapses to one via the "single"
 * class so the stylesheet can stack the panels.
 */

import { ApiClient, ApiError, type SiteItem } from "./api.js";
import { AuthSession, type PendingStore } from "./auth.js";
import type { ImageCodec } from "./codec.js";
import type { ClientConfig } from "./config.js";
import { prepareImages, sizeReduction, type ClientImage } from "./images.js";
import { uploadImages } from "./upload.js";
import { mountViewer, type ViewerHandle } from "./viewer.js";

export interface AppContext {
  config: ClientConfig;
  api: ApiClient;
  session: AuthSession;
  codec: ImageCodec;
  pending: PendingStore;
}

export interface App {
  root: HTMLElement;
  left: HTMLElement;
  main: HTMLElement;
  right: HTMLElement;
  route: string;
  viewer: ViewerHandle | null;
  images: ClientImage[];
  termsAccepted: boolean;
  navigate(hash: string): Promise<void>;
  applyLayout(width: number): void;
  refreshSiteList(q?: string): Promise<void>;
}

export const NARROW_BREAKPOINT = 768;

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function parseRoute(hash: string): { page: string; arg: string } {
  const parts = hash.replace(/^#\/?/, "").split("/");
  const page = parts[0] || "home";
  return { page, arg: parts.slice(1).join("/") };
}

export function createApp(root: HTMLElement, ctx: AppContext): App {
  const doc = root.ownerDocument;
  root.innerHTML = "";
  root.className = "app-frame columns";

  const left = el(doc, "section", "col col-left");
  const main = el(doc, "section", "col col-main");
  const right = el(doc, "section", "col col-right");
  root.append(left, main, right);

  const app: App = {
    root,
    left,
    main,
    right,
    route: "#/",
    viewer: null,
    images: [],
    termsAccepted: false,

    applyLayout(width: number) {
      root.classList.toggle("single", width < NARROW_BREAKPOINT);
    },

    async refreshSiteList(q = "") {
      const listing = await ctx.api.listSites(q);
      const box = right.querySelector(".site-list");
      if (box === null) return;
      box.innerHTML = "";
      for (const site of listing.items) {
        const row = el(doc, "a", "site-row", site.name);
        (row as HTMLAnchorElement).href = `#/sites/${site.verbose_id || site.id}`;
        if (site.ark !== null) row.classList.add("published");
        box.appendChild(row);
      }
    },

    async navigate(hash: string) {
      app.route = hash || "#/";
      const { page, arg } = parseRoute(app.route);
      app.viewer = null;
      main.innerHTML = "";
      left.innerHTML = "";
      if (page === "home") {
        renderHome();
      } else if (page === "sites") {
        await renderSite(arg);
      } else if (page === "contribute") {
        renderContribute(arg);
      } else if (page === "moderation") {
        await renderModeration();
      } else if (page === "login") {
        renderLogin();
      } else {
        main.appendChild(el(doc, "p", "missing", "page not found"));
      }
    },
  };

  // Right column is the searchable site list on every page.
  const search = el(doc, "input", "site-search") as HTMLInputElement;
  search.type = "search";
  search.placeholder = "search sites";
  search.addEventListener("input", () => {
    void app.refreshSiteList(search.value);
  });
  const list = el(doc, "div", "site-list");
  right.append(search, list);

  function navLinks(): HTMLElement {
    const nav = el(doc, "nav", "main-nav");
    const entries: Array<[string, string]> = [
      ["#/", "home"],
      ["#/login", ctx.session.isLoggedIn ? "signed in" : "sign in"],
    ];
    if (ctx.session.isAdmin) entries.push(["#/moderation", "moderation"]);
    for (const [href, label] of entries) {
      const a = el(doc, "a", "nav-link", label) as HTMLAnchorElement;
      a.href = href;
      nav.appendChild(a);
    }
    return nav;
  }

  function renderHome(): void {
    left.appendChild(navLinks());
    main.appendChild(el(doc, "h1", "", "Heritage sites in 3D"));
    main.appendChild(
      el(
        doc,
        "p",
        "",
        "Pick a site from the list to view its model, or request a new site below.",
      ),
    );
    const form = el(doc, "form", "site-request-form");
    const name = el(doc, "input", "request-name") as HTMLInputElement;
    name.placeholder = "site name";
    const location = el(doc, "input", "request-location") as HTMLInputElement;
    location.placeholder = "where is it";
    const note = el(doc, "textarea", "request-note") as HTMLTextAreaElement;
    const submit = el(doc, "button", "request-submit", "request this site") as HTMLButtonElement;
    submit.type = "submit";
    const result = el(doc, "p", "request-result");
    form.append(name, location, note, submit, result);
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      void ctx.api
        .requestSite({ name: name.value, location: location.value, note: note.value })
        .then(() => {
          result.textContent = "request recorded, thank you";
        })
        .catch((err: unknown) => {
          result.textContent = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
        });
    });
    main.appendChild(form);
  }

  async function findSite(ref: string): Promise<SiteItem | null> {
    const listing = await ctx.api.listSites();
    return (
      listing.items.find((s) => s.verbose_id === ref || s.id === ref) ?? null
    );
  }

  async function renderSite(ref: string): Promise<void> {
    left.appendChild(navLinks());
    const site = await findSite(ref);
    if (site === null) {
      main.appendChild(el(doc, "p", "missing", "unknown site"));
      return;
    }
    const stage = el(doc, "div", "viewer-stage");
    main.appendChild(stage);
    app.viewer = await mountViewer(stage, ctx.api, site, { doc });
    // Metadata belongs in the left column of the three-column frame.
    left.appendChild(app.viewer.metadata);
  }

  function renderContribute(ref: string): void {
    left.appendChild(navLinks());
    main.appendChild(el(doc, "h1", "", "Contribute photographs"));
    if (!ctx.session.isLoggedIn) {
      const prompt = el(doc, "p", "login-required", "sign in to contribute");
      main.appendChild(prompt);
      return;
    }

    const picker = el(doc, "input", "file-picker") as HTMLInputElement;
    picker.type = "file";
    picker.multiple = true;
    picker.accept = "image/jpeg,image/png,image/heic";

    const terms = el(doc, "label", "terms");
    const checkbox = el(doc, "input", "terms-checkbox") as HTMLInputElement;
    checkbox.type = "checkbox";
    checkbox.addEventListener("change", () => {
      app.termsAccepted = checkbox.checked;
      send.disabled = !checkbox.checked;
    });
    terms.append(checkbox, doc.createTextNode(" I accept the terms and the privacy policy"));

    const send = el(doc, "button", "upload-button", "upload") as HTMLButtonElement;
    send.disabled = true;

    const statusList = el(doc, "ul", "upload-status");
    const summaryLine = el(doc, "p", "upload-summary");

    const redraw = () => {
      statusList.innerHTML = "";
      for (const image of app.images) {
        const item = el(doc, "li", `upload-row status-${image.status.toLowerCase()}`);
        const saved = sizeReduction(image);
        const extra =
          image.status === "INVALID" || image.status === "FAILED"
            ? ` [${image.reason ?? "?"}]`
            : saved !== null
              ? ` (${Math.round(saved * 100)}% smaller)`
              : "";
        item.textContent = `${image.name}: ${image.status}${extra}`;
        if (image.exifWarning) item.textContent += " (no camera metadata)";
        statusList.appendChild(item);
      }
    };

    picker.addEventListener("change", () => {
      const files = picker.files === null ? [] : Array.from(picker.files);
      void (async () => {
        const loaded = await Promise.all(
          files.map(async (f) => ({ name: f.name, bytes: new Uint8Array(await f.arrayBuffer()) })),
        );
        app.images = await prepareImages(loaded, ctx.codec, ctx.config, redraw);
        redraw();
      })();
    });

    send.addEventListener("click", () => {
      if (!app.termsAccepted) return;
      void uploadImages(ctx.api, ref, app.images, ctx.config, {
        onUpdate: redraw,
        onAuthExpired: () => {
          summaryLine.textContent = "session expired, please sign in again";
          void app.navigate("#/login");
        },
      }).then((summary) => {
        if (summary.completedSite) {
          summaryLine.textContent = "this site is complete and closed to new images";
        } else if (!summary.authExpired) {
          summaryLine.textContent = `${summary.done} uploaded, ${summary.failed} failed`;
        }
        redraw();
      });
    });

    main.append(picker, terms, send, statusList, summaryLine);
  }

  async function renderModeration(): Promise<void> {
    left.appendChild(navLinks());
    main.appendChild(el(doc, "h1", "", "Moderation queue"));
    if (!ctx.session.isAdmin) {
      main.appendChild(el(doc, "p", "admin-required", "operator sign-in required"));
      return;
    }
    const table = el(doc, "div", "moderation-table");
    main.appendChild(table);
    const queue = await ctx.api.moderationQueue();
    if (queue.items.length === 0) {
      table.appendChild(el(doc, "p", "moderation-empty", "queue is empty"));
      return;
    }
    for (const item of queue.items) {
      const row = el(doc, "div", "moderation-row");
      row.appendChild(el(doc, "span", "moderation-name", `${item.filename} (${item.site_id})`));
      for (const action of ["approve", "reject"] as const) {
        const button = el(doc, "button", `moderation-${action}`, action) as HTMLButtonElement;
        button.addEventListener("click", () => {
          void ctx.api.moderate(item.image_id, action).then(() => {
            row.remove();
          });
        });
        row.appendChild(button);
      }
      table.appendChild(row);
    }
  }

  function renderLogin(): void {
    left.appendChild(navLinks());
    main.appendChild(el(doc, "h1", "", "Sign in"));
    if (ctx.config.oidc !== undefined) {
      const go = el(doc, "button", "oidc-login", "sign in with your provider") as HTMLButtonElement;
      go.addEventListener("click", () => {
        void ctx.session.beginLogin(ctx.config.oidc!, ctx.pending).then((url) => {
          doc.defaultView?.location.assign(url);
        });
      });
      main.appendChild(go);
    }
    const tokenBox = el(doc, "input", "token-input") as HTMLInputElement;
    tokenBox.placeholder = "access token";
    const adminBox = el(doc, "input", "admin-token-input") as HTMLInputElement;
    adminBox.placeholder = "operator token (optional)";
    const apply = el(doc, "button", "token-apply", "use token") as HTMLButtonElement;
    apply.addEventListener("click", () => {
      if (tokenBox.value) {
        ctx.session.useStaticToken(tokenBox.value);
        ctx.api.token = tokenBox.value;
      }
      if (adminBox.value) {
        ctx.session.useAdminToken(adminBox.value);
        ctx.api.adminToken = adminBox.value;
      }
      void app.navigate("#/");
    });
    main.append(tokenBox, adminBox, apply);
  }

  return app;
}
