#!/usr/bin/env python3
"""Fetch the Doubtful Sound dolphin network and build the labeled fixture.

Downloads the canonical release (Lusseau et al. 2003 association network,
62 dolphins / 159 edges, redistributed by M. Newman) and merges in the
published two-group split observed after dolphin SN100 left the
community (Lusseau 2003; Lusseau & Newman 2004).  The canonical GML
carries names only, so the split must be supplied as a separate file:

    --split FILE   lines of "<name><TAB or comma><group>" with group in
                   {0, 1}, covering the 61 remaining dolphins.  SN100 is
                   left unlabeled and dropped by the loader.

Writes dolphins.gml (names + value attributes) into the blockfactor data
directory and records the archive SHA-256 (trust on first use).
"""

import argparse
import hashlib
import io
import sys
import urllib.request
import zipfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from blockfactor.datasets import data_dir
from blockfactor.graphs import Graph
from blockfactor.io import parse_gml_items, save_gml

URLS = [
    "https://websites.umich.edu/~mejn/netdata/dolphins.zip",
    "http://www-personal.umich.edu/~mejn/netdata/dolphins.zip",
]

EXPECTED_NODES = 62
EXPECTED_EDGES = 159


def read_split(path: Path) -> dict[str, int]:
    split = {}
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, group = line.replace(",", "\t").split("\t")[:2]
        split[name.strip()] = int(group)
    bad = {v for v in split.values() if v not in (0, 1)}
    if bad:
        raise SystemExit(f"groups must be 0/1, found {sorted(bad)}")
    return split


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--split", type=Path, required=True,
                        help="name->group file for the published two-group split")
    parser.add_argument("--out", type=Path, default=None,
                        help="output directory (default: blockfactor data dir)")
    args = parser.parse_args()
    out = args.out or data_dir()
    out.mkdir(parents=True, exist_ok=True)
    split = read_split(args.split)

    blob = None
    last = None
    for url in URLS:
        try:
            print(f"fetching {url} ...")
            with urllib.request.urlopen(url, timeout=60) as resp:
                blob = resp.read()
            break
        except Exception as exc:
            last = exc
            print(f"  failed: {exc}")
    if blob is None:
        raise SystemExit(f"all mirrors failed; last error: {last}")

    digest = hashlib.sha256(blob).hexdigest()
    sha_file = out / "dolphins.sha256"
    if sha_file.exists():
        recorded = sha_file.read_text().split()[0]
        if recorded != digest:
            raise SystemExit(
                f"checksum mismatch: recorded {recorded}, downloaded {digest}; "
                "delete dolphins.sha256 to accept the new archive"
            )
    with zipfile.ZipFile(io.BytesIO(blob)) as zf:
        gml_name = next(n for n in zf.namelist() if n.endswith(".gml"))
        text = zf.read(gml_name).decode("utf-8", errors="replace")

    nodes, pairs, _ = parse_gml_items(text)
    if len(nodes) != EXPECTED_NODES or len(pairs) != EXPECTED_EDGES:
        raise SystemExit(
            f"expected {EXPECTED_NODES} nodes / {EXPECTED_EDGES} edges, "
            f"parsed {len(nodes)} / {len(pairs)}"
        )
    names = [str(f.get("label", f["id"])) for f in nodes]
    labels = np.array([split.get(name, -1) for name in names], dtype=np.int64)
    unlabeled = [names[i] for i in range(len(names)) if labels[i] < 0]
    if unlabeled != ["SN100"]:
        raise SystemExit(
            "exactly dolphin SN100 must be unlabeled by the split file; "
            f"unlabeled: {unlabeled}"
        )

    g = Graph.from_edges(len(nodes), pairs, node_names=names)
    save_gml(g, out / "dolphins.gml", labels=labels)
    sha_file.write_text(f"{digest}  dolphins.zip\n")
    print(f"wrote {out / 'dolphins.gml'} (archive sha256 {digest})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
