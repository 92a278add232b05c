#!/usr/bin/env python3
# Copyright 2026 The qcnnpad authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Fetches/creates the benchmark datasets.

Writes to --out (default ./data):
  wdbc.csv                      UCI WDBC layout (id, M/B, 30 features)
  mnist-images-idx3-ubyte.gz    MNIST-layout IDX image file
  mnist-labels-idx1-ubyte.gz    matching label file
  provenance.json               where each file came from

WDBC ships with scikit-learn (the exact UCI dataset). For MNIST a real
download is attempted first; in offline environments a deterministic
rendered digit set (DejaVu fonts, random placement/rotation/noise) with the
same file layout and classes is produced instead, and recorded as such in
provenance.json.
"""
import argparse
import gzip
import json
import os
import socket
import struct
import sys

import numpy as np


def write_idx(out_dir, images, labels, stem="mnist"):
    images = np.asarray(images, dtype=np.uint8)
    labels = np.asarray(labels, dtype=np.uint8)
    n, rows, cols = images.shape
    img_path = os.path.join(out_dir, f"{stem}-images-idx3-ubyte.gz")
    lab_path = os.path.join(out_dir, f"{stem}-labels-idx1-ubyte.gz")
    with gzip.open(img_path, "wb") as f:
        f.write(struct.pack(">IIII", 0x803, n, rows, cols))
        f.write(images.tobytes())
    with gzip.open(lab_path, "wb") as f:
        f.write(struct.pack(">II", 0x801, n))
        f.write(labels.tobytes())
    return img_path, lab_path


def dump_wdbc(out_dir):
    from sklearn.datasets import load_breast_cancer

    ds = load_breast_cancer()
    path = os.path.join(out_dir, "wdbc.csv")
    with open(path, "w") as f:
        for i, (row, target) in enumerate(zip(ds.data, ds.target)):
            diag = "M" if target == 0 else "B"  # sklearn: 0 = malignant
            cells = ",".join("%.17g" % v for v in row)
            f.write(f"{842301 + i},{diag},{cells}\n")
    return path


def try_download_mnist(out_dir):
    socket.setdefaulttimeout(20)
    try:
        from torchvision.datasets import MNIST

        ds = MNIST(root=os.path.join(out_dir, "_torchvision"), train=True,
                   download=True)
        images = ds.data.numpy()
        labels = ds.targets.numpy()
        write_idx(out_dir, images, labels)
        return True
    except Exception as e:  # noqa: BLE001 - offline sandboxes land here
        print(f"MNIST download unavailable ({type(e).__name__}: {e})",
              file=sys.stderr)
        return False


def find_fonts():
    import matplotlib

    root = os.path.join(os.path.dirname(matplotlib.__file__),
                        "mpl-data", "fonts", "ttf")
    names = [
        "DejaVuSans.ttf", "DejaVuSans-Bold.ttf", "DejaVuSans-Oblique.ttf",
        "DejaVuSerif.ttf", "DejaVuSerif-Bold.ttf", "DejaVuSansMono.ttf",
        "DejaVuSansMono-Bold.ttf",
    ]
    found = [os.path.join(root, n) for n in names
             if os.path.exists(os.path.join(root, n))]
    if not found:
        raise RuntimeError(f"no DejaVu fonts under {root}")
    return found


def render_digit(rng, fonts, digit, cache={}):
    from PIL import Image, ImageDraw, ImageFont

    hi = 112  # render large, then downsample for soft edges
    font_path = fonts[rng.integers(len(fonts))]
    size = int(rng.integers(62, 92))
    key = (font_path, size)
    if key not in cache:
        cache[key] = ImageFont.truetype(font_path, size)
    font = cache[key]

    img = Image.new("L", (hi, hi), 0)
    draw = ImageDraw.Draw(img)
    bbox = draw.textbbox((0, 0), str(digit), font=font)
    w, h = bbox[2] - bbox[0], bbox[3] - bbox[1]
    dx = (hi - w) / 2 - bbox[0] + rng.uniform(-8, 8)
    dy = (hi - h) / 2 - bbox[1] + rng.uniform(-8, 8)
    draw.text((dx, dy), str(digit), fill=255, font=font)
    img = img.rotate(rng.uniform(-9, 9), resample=Image.BILINEAR,
                     fillcolor=0)
    img = img.resize((28, 28), Image.LANCZOS)

    arr = np.asarray(img, dtype=np.float64)
    arr *= rng.uniform(0.8, 1.0)            # stroke intensity jitter
    arr += rng.normal(0.0, 4.5, arr.shape)  # sensor-style noise
    return np.clip(arr, 0, 255).astype(np.uint8)


def synthesize_mnist(out_dir, per_class, seed, classes=(0, 1, 5, 6)):
    rng = np.random.default_rng(seed)
    fonts = find_fonts()
    images, labels = [], []
    for digit in classes:
        for _ in range(per_class):
            images.append(render_digit(rng, fonts, digit))
            labels.append(digit)
    order = rng.permutation(len(images))
    images = np.stack(images)[order]
    labels = np.asarray(labels, dtype=np.uint8)[order]
    write_idx(out_dir, images, labels)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data")
    ap.add_argument("--per-class", type=int, default=2500,
                    help="synthetic images per digit class")
    ap.add_argument("--seed", type=int, default=20260810)
    ap.add_argument("--synthetic-only", action="store_true",
                    help="skip the download attempt")
    args = ap.parse_args()

    os.makedirs(args.out, exist_ok=True)
    provenance = {"wdbc": "scikit-learn load_breast_cancer (UCI WDBC)"}
    dump_wdbc(args.out)

    got_real = False if args.synthetic_only else try_download_mnist(args.out)
    if got_real:
        provenance["mnist"] = "torchvision download (original MNIST)"
    else:
        synthesize_mnist(args.out, args.per_class, args.seed)
        provenance["mnist"] = (
            "synthetic-render fallback (DejaVu digits, "
            f"per_class={args.per_class}, seed={args.seed})")

    with open(os.path.join(args.out, "provenance.json"), "w") as f:
        json.dump(provenance, f, indent=2)
    print(json.dumps(provenance, indent=2))


if __name__ == "__main__":
    main()
