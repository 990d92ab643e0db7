"""Run both duality realizations over the seeded corpus and tabulate the checks.

Usage: python3 scripts/verify_corpus.py [--size 50] [--seed 20260418]
"""

from __future__ import annotations

import argparse
import time

from ldpckw.corpus import CORPUS_SEED, random_corpus
from ldpckw.process import extract_defect, extract_minimal_coupling, resource_counts
from ldpckw.sim import process_matrix
from ldpckw.verify import verify_duality
from ldpckw.zx import kw_matrix_oracle, normalized_overlap


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=50)
    parser.add_argument("--seed", type=int, default=CORPUS_SEED)
    args = parser.parse_args()

    t0 = time.perf_counter()
    print(f"{'code':8s} {'n':>2s} {'m':>2s} {'k':>2s} {'kT':>2s}  {'defect':>7s}  {'fid(defect)':>14s}  "
          f"{'fid(minimal)':>14s}  relations")
    failures = 0
    for c in random_corpus(args.size, args.seed):
        defect, minimal = extract_defect(c), extract_minimal_coupling(c)
        oracle = kw_matrix_oracle(c.H)
        fids = [normalized_overlap(process_matrix(p), oracle) if p.n_wires <= 12 else float("nan")
                for p in (defect, minimal)]
        reports = [verify_duality(c, p) for p in (defect, minimal)]
        ok = all(r.passed for r in reports)
        failures += not ok
        print(f"{c.name:8s} {c.n:2d} {c.m:2d} {c.k:2d} {c.k_T:2d}  {str(resource_counts(defect)):>7s}  "
              f"{fids[0]:14.12f}  {fids[1]:14.12f}  {'ok' if ok else 'FAIL'}")
    print(f"{failures} failing codes, {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
