export { ApiClient, ApiError } from "./api.js";
export type { ContributionReceipt, RunStatus, SiteItem, SiteList } from "./api.js";
export { AuthSession, memoryPendingStore, pkceChallenge, sessionPendingStore } from "./auth.js";
export { CodecError, jpegJsCodec } from "./codec.js";
export type { ImageCodec, RawImage } from "./codec.js";
export { DEFAULTS, makeConfig } from "./config.js";
export type { ClientConfig, OidcConfig } from "./config.js";
export {
  clientImage,
  prepareImages,
  recompressImage,
  sizeReduction,
  validateImage,
} from "./images.js";
export type { ClientImage, ImageStatus } from "./images.js";
export {
  exifDateTime,
  extractExifApp1,
  imageDimensions,
  jpegDimensions,
  jpegSegments,
  pngDimensions,
  sniffFormat,
  spliceExifApp1,
} from "./jpeg.js";
export { GlbError, parseGlb } from "./glb.js";
export type { ParsedModel } from "./glb.js";
export { downscaleTo } from "./raster.js";
export { inkRatio, OrbitCamera, renderModel } from "./render.js";
export { uploadImages } from "./upload.js";
export type { UploadSummary } from "./upload.js";
export { mountViewer } from "./viewer.js";
export { createApp, NARROW_BREAKPOINT } from "./app.js";
export { boot, canvasCodec } from "./browser.js";
