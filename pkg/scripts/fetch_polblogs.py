#!/usr/bin/env python3
"""Fetch the political-blogs network and build the benchmark fixture.

Downloads the canonical GML release (Adamic & Glance 2005 blog hyperlink
network, redistributed by M. Newman), validates its structure against
the published counts, and writes two fixture files into the blockfactor
data directory:

  polblogs_edges.txt   raw DIRECTED edge list, 0-based declaration order
  polblogs_labels.txt  one 0/1 political leaning per node

The SHA-256 of the downloaded archive is recorded in polblogs.sha256 on
first fetch and verified on later runs (trust on first use; no hash is
pinned in-repo because the archive is not redistributed here).

Requires internet access; run on a networked machine and copy the two
output files (or point BLOCKFACTOR_DATA_DIR at them).
"""

import argparse
import hashlib
import io
import sys
import urllib.request
import zipfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from blockfactor.datasets import data_dir
from blockfactor.graphs import largest_connected_component, symmetrize_directed
from blockfactor.io import parse_gml_items

URLS = [
    "https://websites.umich.edu/~mejn/netdata/polblogs.zip",
    "http://www-personal.umich.edu/~mejn/netdata/polblogs.zip",
]

EXPECTED_NODES = 1490
EXPECTED_LCC_NODES = 1222
EXPECTED_AVG_DEGREE = 27.0


def download(urls) -> bytes:
    last = None
    for url in urls:
        try:
            print(f"fetching {url} ...")
            with urllib.request.urlopen(url, timeout=60) as resp:
                return resp.read()
        except Exception as exc:  # try the next mirror
            last = exc
            print(f"  failed: {exc}")
    raise SystemExit(f"all mirrors failed; last error: {last}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=None,
                        help="output directory (default: blockfactor data dir)")
    args = parser.parse_args()
    out = args.out or data_dir()
    out.mkdir(parents=True, exist_ok=True)

    blob = download(URLS)
    digest = hashlib.sha256(blob).hexdigest()
    sha_file = out / "polblogs.sha256"
    if sha_file.exists():
        recorded = sha_file.read_text().split()[0]
        if recorded != digest:
            raise SystemExit(
                f"checksum mismatch: recorded {recorded}, downloaded {digest}; "
                "delete polblogs.sha256 to accept the new archive"
            )
    with zipfile.ZipFile(io.BytesIO(blob)) as zf:
        gml_name = next(n for n in zf.namelist() if n.endswith(".gml"))
        text = zf.read(gml_name).decode("utf-8", errors="replace")

    nodes, pairs, directed = parse_gml_items(text)
    if len(nodes) != EXPECTED_NODES:
        raise SystemExit(f"expected {EXPECTED_NODES} nodes, parsed {len(nodes)}")
    if not directed:
        print("warning: archive not marked directed; keeping pairs as parsed")
    labels = [int(f.get("value", -1)) for f in nodes]
    if any(v not in (0, 1) for v in labels):
        raise SystemExit("every node must carry a 0/1 political leaning")

    g = symmetrize_directed(pairs, n=len(nodes))
    lcc, _ = largest_connected_component(g)
    avg_deg = 2.0 * lcc.num_edges / lcc.n
    print(f"parsed: {len(nodes)} nodes, {len(pairs)} directed pairs; "
          f"LCC {lcc.n} nodes, average degree {avg_deg:.2f}")
    if lcc.n != EXPECTED_LCC_NODES:
        raise SystemExit(f"expected LCC of {EXPECTED_LCC_NODES} nodes, got {lcc.n}")
    if abs(avg_deg - EXPECTED_AVG_DEGREE) > 1.0:
        raise SystemExit(f"expected average degree near {EXPECTED_AVG_DEGREE}, got {avg_deg:.2f}")

    with open(out / "polblogs_edges.txt", "w") as fh:
        fh.write("# political blogs hyperlink network, raw directed pairs, 0-based\n")
        for a, b in pairs:
            fh.write(f"{a} {b}\n")
    with open(out / "polblogs_labels.txt", "w") as fh:
        fh.write("# 0 = liberal, 1 = conservative, declaration order\n")
        for v in labels:
            fh.write(f"{v}\n")
    sha_file.write_text(f"{digest}  polblogs.zip\n")
    print(f"wrote fixtures to {out} (archive sha256 {digest})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
