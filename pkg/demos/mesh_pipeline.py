"""Shrink a large textured mesh into a quantized binary glTF artifact.

Run with: python3 demos/mesh_pipeline.py
"""

import os
import tempfile
from pathlib import Path

import numpy as np

from crowdmesh.mesh import (
    compression_report,
    decimate,
    downsample_texture,
    read_glb,
    write_glb,
    write_obj,
)
from crowdmesh.synthetic import fibonacci_sphere_mesh


def main() -> None:
    mesh = fibonacci_sphere_mesh(40_000, seed=9, texture_side=2048)
    print(f"input mesh: {mesh.vertex_count} vertices, {mesh.face_count} faces, "
          f"{mesh.texture.pixels.shape[1]}px texture")

    with tempfile.TemporaryDirectory() as workdir:
        obj_files = write_obj(mesh, str(Path(workdir) / "raw.obj"))
        input_bytes = sum(os.path.getsize(p) for p in obj_files)
        print(f"raw OBJ + texture on disk: {input_bytes:,} bytes "
              f"({len(obj_files)} files)")

        small = decimate(mesh, 0.3).copy()
        small.texture = downsample_texture(small.texture, 1024)
        blob = write_glb(small, quantize=True)

        report = compression_report(
            input_bytes, len(blob),
            vertices_before=mesh.vertex_count, vertices_after=small.vertex_count,
            faces_before=mesh.face_count, faces_after=small.face_count,
        )
        print(f"decimated to {small.vertex_count} vertices / "
              f"{small.face_count} faces, texture capped at 1024px")
        print(f"GLB artifact: {len(blob):,} bytes "
              f"({report.ratio:.1%} smaller)")

        parsed, _ = read_glb(blob)
        extent = small.positions.max(axis=0) - small.positions.min(axis=0)
        bound = float(np.linalg.norm(extent)) / 2**16 / 2
        worst = float(np.max(np.linalg.norm(parsed.positions - small.positions,
                                            axis=1)))
        print(f"round-trip position error {worst:.2e} "
              f"(16-bit quantization bound {bound:.2e})")


if __name__ == "__main__":
    main()
