"""
Compare the baseline detectors with the local stimuli operator on one image
and binarize every response with Otsu's threshold.

Pass a PGM path as the first argument to use your own image; output PGMs go
to the directory given as the second argument (default: a temp directory).
"""

import sys
import tempfile
from pathlib import Path

import numpy as np

from lstedge import binarize, read_pgm, respond, write_pgm
from lstedge.synthbench import SyntheticSpec, render

if len(sys.argv) > 1:
    img = read_pgm(sys.argv[1])
else:
    img, _ = render(SyntheticSpec("gaussian", size=64, noise_pct=5, seed=1))
out = Path(sys.argv[2]) if len(sys.argv) > 2 else Path(tempfile.mkdtemp(prefix="lstedge_"))
out.mkdir(parents=True, exist_ok=True)

## One response map per method, normalized for viewing, plus its binary map
for method in ("sobel", "sis", "kirsch", "prewitt", "lst"):
    resp = respond(img, method)
    bits = binarize(resp)
    write_pgm(resp.values, out / f"{method}_response.pgm", normalize=True)
    write_pgm(bits.as_float() * 255, out / f"{method}_binary.pgm")
    print(f"{method:8s} max={resp.values.max():9.3f}  edge pixels={bits.bits.mean():6.1%}")

## The unsmoothed Laplacian zero-crossing detector is already binary
zc = respond(img, "laplacian").values
write_pgm(zc * 255, out / "laplacian_binary.pgm")
print(f"{'laplacian':8s} edge pixels={zc.mean():6.1%}")
print("wrote", out)
