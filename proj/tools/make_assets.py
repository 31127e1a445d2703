#!/usr/bin/env python3
"""Regenerate the bundled host and watermark images under assets/.

host.png      512x512 RGB, center crop of scikit-image's "chelsea" photo
watermark.png 64x64 binary bitmap, scikit-image's "camera" binarized at its median
"""
import pathlib

import numpy as np
from PIL import Image
from skimage import data

out = pathlib.Path(__file__).resolve().parent.parent / "assets"
out.mkdir(exist_ok=True)

cat = data.chelsea()
h, w, _ = cat.shape
side = min(h, w)
top, left = (h - side) // 2, (w - side) // 2
crop = Image.fromarray(cat[top:top + side, left:left + side])
crop.resize((512, 512), Image.BICUBIC).save(out / "host.png", optimize=False)

cam = Image.fromarray(data.camera()).resize((64, 64), Image.BILINEAR)
arr = np.asarray(cam, dtype=np.float64)
bits = np.where(arr > np.median(arr), 255, 0).astype(np.uint8)
Image.fromarray(bits, mode="L").save(out / "watermark.png", optimize=False)
print("white fraction:", (bits == 255).mean())
