#!/usr/bin/env python3
"""Cluster the karate club with every method and inspect the factor quality."""

import numpy as np

from blockfactor import (
    assign_communities,
    exactness_diagnostics,
    misclustered_count,
    nmf_init_from_partition,
    nmi,
    normalized_laplacian,
    osntf,
    snmf,
    spectral_clustering,
)
from blockfactor.datasets import karate
from blockfactor.metrics import misclustered_nodes

g, truth = karate()
lap = normalized_laplacian(g)

print("spectral baselines")
for variant in ("plain", "regularized", "regularized_no_projection"):
    labels = spectral_clustering(g, 2, variant=variant, seed=0)
    print(f"  {variant:28s} misclustered={misclustered_count(truth, labels)} "
          f"nmi={nmi(truth, labels):.4f}")

print("matrix factorizations (seeded from regularized spectral clustering)")
init = spectral_clustering(g, 2, "regularized", seed=0)
h0 = nmf_init_from_partition(init, 2)
for solver, name in ((snmf, "snmf"), (osntf, "osntf")):
    f = solver(lap, 2, h0)
    labels = assign_communities(f.h)
    report = exactness_diagnostics(lap, f)
    misfits = [int(i) for i in misclustered_nodes(truth, labels)]
    print(f"  {name:5s} iterations={f.iterations:3d} "
          f"residual={report.residual:.4f} "
          f"misclustered={misclustered_count(truth, labels)} (nodes {misfits}) "
          f"nmi={nmi(truth, labels):.4f}")
    if f.orthogonality_drift is not None:
        print(f"        orthogonality drift {f.orthogonality_drift:.3e}, "
              f"near-one-nonzero rows at 1e-2: "
              f"{exactness_diagnostics(lap, f, sparsity_threshold=1e-2).row_sparsity:.2f}")

print("\nnote: on the binarized friendship network every method that optimizes")
print("its objective places actor 3 (id 2) with the officers; the weighted-tie")
print("version of this network resolves that boundary the other way.")
