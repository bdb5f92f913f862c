#!/usr/bin/env python3
# Copyright 2026 The VIOLIN Authors
# SPDX-License-Identifier: Apache-2.0
"""Derives the level-1 and level-2 centroid rows of iscc_nbs_centroids.tsv.

Level-3 rows (the 267 ISCC-NBS centroids) are read from the file; every
coarser category gets the sRGB encoding of the CIELAB mean of its members.
"""
import math
import sys

LEVEL2 = [
    "pink", "red", "yellowish pink", "reddish orange", "reddish brown",
    "orange", "brown", "orange yellow", "yellowish brown", "yellow",
    "olive brown", "greenish yellow", "olive", "yellow green", "olive green",
    "yellowish green", "green", "bluish green", "greenish blue", "blue",
    "purplish blue", "violet", "purple", "reddish purple", "purplish pink",
    "purplish red", "white", "gray", "black",
]
LEVEL1_OF = {
    "pink": "pink", "yellowish pink": "pink", "purplish pink": "pink",
    "red": "red", "purplish red": "red",
    "reddish orange": "orange", "orange": "orange",
    "reddish brown": "brown", "brown": "brown", "yellowish brown": "brown",
    "olive brown": "brown",
    "orange yellow": "yellow", "yellow": "yellow", "greenish yellow": "yellow",
    "olive": "olive", "olive green": "olive",
    "yellow green": "yellow green",
    "yellowish green": "green", "green": "green", "bluish green": "green",
    "greenish blue": "blue", "blue": "blue", "purplish blue": "blue",
    "violet": "purple", "purple": "purple", "reddish purple": "purple",
    "white": "white", "gray": "gray", "black": "black",
}
LEVEL1 = ["pink", "red", "orange", "brown", "yellow", "olive", "yellow green",
          "green", "blue", "purple", "white", "gray", "black"]

WHITE = (0.95047, 1.0, 1.08883)


def to_linear(c):
    c /= 255.0
    return c / 12.92 if c <= 0.04045 else ((c + 0.055) / 1.055) ** 2.4


def from_linear(c):
    c = 12.92 * c if c <= 0.0031308 else 1.055 * c ** (1 / 2.4) - 0.055
    return min(255, max(0, round(c * 255)))


def lab(hexcode):
    r, g, b = (to_linear(int(hexcode[i:i + 2], 16)) for i in (1, 3, 5))
    xyz = (0.4124564 * r + 0.3575761 * g + 0.1804375 * b,
           0.2126729 * r + 0.7151522 * g + 0.0721750 * b,
           0.0193339 * r + 0.1191920 * g + 0.9503041 * b)
    f = [t ** (1 / 3) if t > 216 / 24389 else (24389 / 27 * t + 16) / 116
         for t in (v / w for v, w in zip(xyz, WHITE))]
    return (116 * f[1] - 16, 500 * (f[0] - f[1]), 200 * (f[1] - f[2]))


def hexcode(lab_value):
    L, a, b = lab_value
    fy = (L + 16) / 116
    fx, fz = fy + a / 500, fy - b / 200
    inv = [t ** 3 if t ** 3 > 216 / 24389 else (116 * t - 16) / (24389 / 27)
           for t in (fx, fy, fz)]
    x, y, z = (v * w for v, w in zip(inv, WHITE))
    rgb = (3.2404542 * x - 1.5371385 * y - 0.4985314 * z,
           -0.9692660 * x + 1.8760108 * y + 0.0415560 * z,
           0.0556434 * x - 0.2040259 * y + 1.0572252 * z)
    return "#" + "".join(f"{from_linear(max(0.0, c)):02X}" for c in rgb)


def level2_of(name):
    # Longest trailing hue phrase wins ("light olive gray" -> "gray").
    best = None
    for cand in LEVEL2:
        if name == cand or name.endswith(" " + cand):
            if best is None or len(cand) > len(best):
                best = cand
    if best is None:
        raise SystemExit(f"no level-2 category for {name!r}")
    return best


def mean(values):
    return tuple(sum(v[i] for v in values) / len(values) for i in range(3))


def main(path):
    with open(path, encoding="utf-8") as f:
        rows = [line.rstrip("\n").split("\t") for line in f if line.strip()]
    level3 = [(name, hx) for level, name, hx in rows if level == "3"]
    assert len(level3) == 267, len(level3)
    members2 = {name: [] for name in LEVEL2}
    for name, hx in level3:
        members2[level2_of(name)].append(lab(hx))
    members1 = {name: [] for name in LEVEL1}
    for name2, labs in members2.items():
        members1[LEVEL1_OF[name2]].extend(labs)
    with open(path, "w", encoding="utf-8") as f:
        for name in LEVEL1:
            f.write(f"1\t{name}\t{hexcode(mean(members1[name]))}\n")
        for name in LEVEL2:
            f.write(f"2\t{name}\t{hexcode(mean(members2[name]))}\n")
        for name, hx in level3:
            f.write(f"3\t{name}\t{hx}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "core/data/iscc_nbs_centroids.tsv")
