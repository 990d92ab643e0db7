"""Prepare ordered states with the defect realization of a code.

Prints the output amplitudes for ancillas in |0>, |+> and |->; the first gives
the fully symmetric state, the other two select a symmetry sector.

Usage: python3 scripts/state_preparation.py [path/to/code.alist]
"""

from __future__ import annotations

import argparse

from ldpckw.alist import read_alist
from ldpckw.code import ising3
from ldpckw.sim import prepare_state


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("alist", nargs="?")
    args = parser.parse_args()
    code = read_alist(args.alist) if args.alist else ising3()
    for label in ("zero", "plus", "minus"):
        state = prepare_state(code, label)
        terms = [f"{amp.real:+.4f}|{''.join(str((i >> w) & 1) for w in range(code.m))}>"
                 for i, amp in enumerate(state.amplitudes) if abs(amp) > 1e-12]
        shown = " ".join(terms[:8]) + (" ..." if len(terms) > 8 else "")
        print(f"ancilla {label:5s}: {shown}")


if __name__ == "__main__":
    main()
