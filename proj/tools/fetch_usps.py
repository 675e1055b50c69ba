#!/usr/bin/env python3
"""Download the USPS digit dataset (LIBSVM copies) into data/.

Produces data/usps and data/usps.t in LIBSVM sparse format, which the
benchmark loader reads directly. Features in these copies live in [-1, 1];
the loader rescales them to [0, 1] by default.
"""

import argparse
import bz2
import urllib.request
from pathlib import Path

BASE = "https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets/multiclass"
FILES = {"usps": f"{BASE}/usps.bz2", "usps.t": f"{BASE}/usps.t.bz2"}


def fetch(url: str, dest: Path) -> None:
    print(f"fetching {url}")
    with urllib.request.urlopen(url) as resp:
        raw = resp.read()
    dest.write_bytes(bz2.decompress(raw))
    print(f"wrote {dest} ({dest.stat().st_size} bytes)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, url in FILES.items():
        dest = args.out / name
        if dest.exists():
            print(f"{dest} already present, skipping")
            continue
        fetch(url, dest)


if __name__ == "__main__":
    main()
