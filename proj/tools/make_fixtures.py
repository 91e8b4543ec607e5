#!/usr/bin/env python3
# Copyright 2026 The colormlp Authors
# SPDX-License-Identifier: Apache-2.0

"""Regenerates the bundled reference LUTs and test photo under data/.

The outputs are committed; rerun only when the looks themselves change.
"""

import argparse
import pathlib

import numpy as np
from PIL import Image

SIZE = 33


def luma(rgb):
    return rgb @ np.array([0.2126, 0.7152, 0.0722])


def saturate(rgb, amount):
    y = luma(rgb)[..., None]
    return y + (rgb - y) * amount


def s_curve(x, strength):
    return x + strength * x * (1.0 - x) * (2.0 * x - 1.0)


def teal_orange(rgb):
    out = s_curve(rgb, 0.6)
    y = luma(out)[..., None]
    shadows = (1.0 - y) ** 2
    highlights = y ** 2
    out = out + shadows * np.array([-0.06, 0.02, 0.08]) + highlights * np.array([0.08, 0.02, -0.07])
    return saturate(out, 1.3)


def faded_film(rgb):
    out = 0.08 + 0.86 * np.power(rgb, [0.95, 0.9, 1.1])
    mixer = np.array([[0.90, 0.10, 0.00],
                      [0.05, 0.90, 0.05],
                      [0.00, 0.15, 0.85]])
    out = out @ mixer.T
    return saturate(out, 0.8)


def cross_process(rgb):
    r = s_curve(rgb[..., 0], 0.9)
    g = np.power(rgb[..., 1], 0.85)
    b = 0.15 + 0.7 * rgb[..., 2]
    return saturate(np.stack([r, g, b], axis=-1), 1.1)


LOOKS = {
    "teal_orange": teal_orange,
    "faded_film": faded_film,
    "cross_process": cross_process,
}


def write_cube(path, title, fn):
    axis = np.arange(SIZE) / (SIZE - 1)
    b, g, r = np.meshgrid(axis, axis, axis, indexing="ij")
    grid = np.stack([r, g, b], axis=-1).reshape(-1, 3)  # red fastest
    cells = np.clip(fn(grid), 0.0, 1.0)
    with open(path, "w") as f:
        f.write(f'TITLE "{title}"\n')
        f.write(f"LUT_3D_SIZE {SIZE}\n")
        f.write("DOMAIN_MIN 0 0 0\nDOMAIN_MAX 1 1 1\n")
        for c in cells:
            f.write(f"{c[0]:.6f} {c[1]:.6f} {c[2]:.6f}\n")


def landscape(width, height, seed):
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    u = xx / (width - 1)
    v = yy / (height - 1)
    img = np.zeros((height, width, 3))

    horizon = 0.55
    sky_t = np.clip(v / horizon, 0, 1)[..., None]
    sky = (1 - sky_t) * np.array([0.18, 0.35, 0.75]) + sky_t * np.array([0.95, 0.65, 0.40])
    sun = np.exp(-((u - 0.7) ** 2 + (v - 0.42) ** 2) / 0.004)[..., None]
    sky = sky + sun * np.array([0.6, 0.45, 0.2])
    img[:] = sky

    ridge = 0.45 + 0.06 * np.sin(7.0 * u + 1.3) + 0.03 * np.sin(23.0 * u)
    mountain = v > ridge
    shade = np.clip((v - ridge) * 4.0, 0, 1)[..., None]
    rock = (1 - shade) * np.array([0.35, 0.32, 0.40]) + shade * np.array([0.15, 0.22, 0.18])
    img = np.where(mountain[..., None], rock, img)

    field = v > 0.62
    tex = 0.08 * np.sin(40 * u + 9 * np.sin(5 * v)) + 0.05 * rng.standard_normal((height, width))
    grass = np.array([0.25, 0.55, 0.18]) + tex[..., None] * np.array([1.0, 1.2, 0.5])
    grass = grass * (0.7 + 0.5 * (v[..., None] - 0.62))
    img = np.where(field[..., None], grass, img)

    water = (v > 0.78) & (np.abs(u - 0.35) < 0.25 + 0.1 * np.sin(8 * v))
    refl = sky[::-1] * 0.75 + 0.04 * np.sin(120 * v)[..., None]
    img = np.where(water[..., None], refl, img)

    barn = (np.abs(u - 0.82) < 0.05) & (np.abs(v - 0.68) < 0.05)
    img = np.where(barn[..., None], np.array([0.72, 0.12, 0.10]), img)

    img = img + 0.01 * rng.standard_normal(img.shape)
    return (np.clip(img, 0, 1) * 255 + 0.5).astype(np.uint8)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    args = parser.parse_args()
    root = pathlib.Path(args.out)
    (root / "luts").mkdir(parents=True, exist_ok=True)
    (root / "images").mkdir(parents=True, exist_ok=True)
    for name, fn in LOOKS.items():
        write_cube(root / "luts" / f"{name}.cube", name, fn)
    Image.fromarray(landscape(480, 320, seed=7), "RGB").save(root / "images" / "landscape.png")


if __name__ == "__main__":
    main()
