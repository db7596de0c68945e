"""
The ten-graph benchmark
=======================

Runs G1 to G10 with a few replicates and prints the grouped table.
The ``global_*`` columns average over all vertex pairs, the ``intra_*``
columns over pairs inside clusters.  Takes around half a minute.
"""

import sys

from clusterdist import ExperimentConfig, run_experiment

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 2
result = run_experiment(ExperimentConfig.benchmark(seeds_per_graph=seeds, output_dir="benchmark_out"))

for row in result.grouped:
    print(
        f"p_inter={row['p_inter']:<5} "
        f"global J/O/B = {row['global_jaccard']:.3f} {row['global_otoc']:.3f} {row['global_burt']:.2f}   "
        f"intra J/O/B = {row['intra_jaccard']:.3f} {row['intra_otoc']:.3f} {row['intra_burt']:.2f}"
    )

for row in result.pooled:
    if row["replicate"] == "all":
        print("pooled", row["measure"], row["rho"], row["n_points"])
