"""Coupling scans of strongly coupled layers: effective matrix elements versus lambda.

Runs the second-order transverse-field probe (tensor coupling of two 2-site rings)
and the plaquette probe (check coupling of two single-check pairs), then fits
power laws to both.

Usage: python3 scripts/perturbation_scan.py [--lambdas 20,40,80,160]
"""

from __future__ import annotations

import argparse

from ldpckw.code import ClassicalCode
from ldpckw.sim import ScanConfig, fit_power_law, run_scan

RING2 = ClassicalCode.from_matrix([[1, 1], [1, 1]], "ring2")
PAIR = ClassicalCode.from_matrix([[1, 1]], "pair")


def report(title: str, samples, expected_exponent: int) -> None:
    print(title)
    print(f"  {'lambda':>8s}  {'amplitude':>14s}  {'amp*lambda^' + str(-expected_exponent):>16s}")
    for lam, amp in samples:
        print(f"  {lam:8g}  {amp:14.6e}  {amp * lam ** (-expected_exponent):16.8f}")
    p, c, r = fit_power_law(samples)
    print(f"  fit: exponent {p:.4f}, constant {c:.6f}, max relative residual {r:.2e}\n")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lambdas", default="20,40,80,160")
    parser.add_argument("--h", type=float, default=1.0, help="transverse field for the flip probe")
    args = parser.parse_args()
    lambdas = tuple(float(v) for v in args.lambdas.split(","))

    flip = run_scan(RING2, RING2, ScanConfig("tensor", args.h, args.h, lambdas, "flip"))
    report(f"tensor coupling, single-site flip (h1 = h2 = {args.h:g})", flip, -1)
    plaquette = run_scan(PAIR, PAIR, ScanConfig("check", 0.0, 0.0, lambdas, "plaquette"))
    report("check coupling, four-site plaquette flip (h1 = h2 = 0, J = 1)", plaquette, -3)


if __name__ == "__main__":
    main()
