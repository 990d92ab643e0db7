"""
Command-line front end.

Exit status: 0 on success / all relations verified, 1 when a verification or
expectation fails, 2 for usage errors, unreadable inputs or exceeded size limits.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import code as codes
from .alist import emit_alist, parse_alist, parse_dense
from .errors import AlistParseError, AnnihilationError, ResourceError
from .pauli import build_hamiltonian
from .process import QuantumProcess, extract_defect, extract_minimal_coupling, extract_product
from .sim import DenseState, ScanConfig, apply_process, exact_spectrum, fit_power_law, run_scan, single_qubit
from .verify import verify_duality, verify_product

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_code(path: str, dense: bool) -> codes.ClassicalCode:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    text = p.read_text()
    try:
        return parse_dense(text, p.stem) if dense else parse_alist(text, p.stem)
    except AlistParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_process(path: str) -> QuantumProcess:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    try:
        return QuantumProcess.from_json(p.read_text())
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: invalid process document ({exc})") from None


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fmt_sets(sets) -> str:
    return " ".join("{" + ",".join(str(v) for v in sorted(s)) + "}" for s in sets) or "-"


def cmd_code(args) -> int:
    c = _load_code(args.input, args.dense)
    if args.action == "info":
        print(f"n {c.n}\nm {c.m}\nrank {c.rank}\nk {c.k}\nkT {c.k_T}")
        print(f"symmetries {_fmt_sets(c.symmetries())}")
        print(f"redundancies {_fmt_sets(c.redundancies())}")
        return EXIT_OK
    result = codes.transpose_code(c) if args.action == "transpose" else codes.perp_code(c)
    _write(emit_alist(result), args.output)
    return EXIT_OK


def cmd_product(args) -> int:
    inputs = [_load_code(p, args.dense) for p in args.inputs]
    if args.kind in ("tensor", "check"):
        if len(inputs) != 2:
            raise UsageError(f"product {args.kind} takes exactly two codes")
        fn = codes.tensor_product if args.kind == "tensor" else codes.check_product
        result = fn(*inputs)
    else:
        if args.q is None:
            raise UsageError("product pq needs --q")
        try:
            result = codes.pq_product(inputs, args.q)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    _write(emit_alist(result), args.output)
    return EXIT_OK


def cmd_extract(args) -> int:
    c = _load_code(args.input, args.dense)
    proc = extract_defect(c) if args.realization == "defect" else extract_minimal_coupling(c)
    _write(proc.to_json(), args.output)
    return EXIT_OK


def cmd_extract_product(args) -> int:
    c1, c2 = _load_code(args.a, args.dense), _load_code(args.b, args.dense)
    _write(extract_product(c1, c2, args.kind).to_json(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    *code_paths, proc_path = args.files
    proc = _load_process(proc_path)
    loaded = [_load_code(p, args.dense) for p in code_paths]
    if proc.realization in ("tensor_merge", "check_merge"):
        if len(loaded) != 2:
            raise UsageError("verifying a product merge needs two codes")
        kind = "tensor" if proc.realization == "tensor_merge" else "check"
        report = verify_product(loaded[0], loaded[1], kind, proc)
    else:
        if len(loaded) != 1:
            raise UsageError("verifying a duality needs one code")
        report = verify_duality(loaded[0], proc)
    if args.json:
        print(json.dumps({"passed": report.passed, "relations": report.records()}, indent=1))
    else:
        sys.stdout.write(report.render())
    return EXIT_OK if report.passed else EXIT_FAIL


def _ancilla_arg(spec: str, count: int):
    if spec.startswith("amp:"):
        vals = [complex(v.replace(" ", "")) for v in spec[4:].split(",")]
        return np.asarray(single_qubit(vals))
    labels = spec.split(",")
    if len(labels) == 1:
        return labels[0]
    if len(labels) != count:
        raise UsageError(f"--ancilla lists {len(labels)} states, process has {count} ancillas")
    return labels


def _read_expected(path: str, n: int) -> DenseState:
    text = Path(path).read_text().split()
    if len(text) == 1 and set(text[0]) <= {"0", "1"} and len(text[0]) == n:
        # bitstring with wire 0 first
        return DenseState.basis(n, int(text[0][::-1], 2))
    return DenseState(np.array([complex(t) for t in text]))


def cmd_simulate(args) -> int:
    proc = _load_process(args.process)
    state = DenseState.uniform(proc.n_in, args.input)
    overrides = _ancilla_arg(args.ancilla, len(proc.ancillas)) if args.ancilla and proc.ancillas else None
    try:
        out, prob = apply_process(proc, state, overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"probability {prob:.12g}")
    for idx, amp in enumerate(out.amplitudes):
        if abs(amp) > 1e-12:
            bits = "".join(str((idx >> w) & 1) for w in range(proc.n_out))
            print(f"{bits} {amp.real:+.12f}{amp.imag:+.12f}j")
    if args.expect:
        expected = _read_expected(args.expect, proc.n_out)
        fid = out.fidelity(expected)
        print(f"fidelity {fid:.15f}")
        return EXIT_OK if fid >= 1 - 1e-10 else EXIT_FAIL
    return EXIT_OK


def cmd_spectrum(args) -> int:
    c = _load_code(args.input, args.dense)
    evals = exact_spectrum(build_hamiltonian(c, args.J, args.h), args.k)
    for e in evals:
        print(f"{e:.12f}")
    return EXIT_OK


def cmd_perturbation(args) -> int:
    c1, c2 = _load_code(args.a, args.dense), _load_code(args.b, args.dense)
    try:
        lambdas = tuple(float(v) for v in args.lambdas.split(","))
    except ValueError:
        raise UsageError(f"bad --lambdas {args.lambdas!r}") from None
    cfg = ScanConfig(args.kind, args.h1, args.h2, lambdas, args.probe, args.J)
    samples = run_scan(c1, c2, cfg)
    print("lambda amplitude")
    for lam, amp in samples:
        print(f"{lam:g} {amp:.12e}")
    if len(samples) >= 2:
        p, const, resid = fit_power_law(samples)
        print(f"fit exponent {p:.6f} constant {const:.6e} residual {resid:.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ldpckw", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--dense", action="store_true", help="read codes as 0/1 rows instead of alist")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("code", help="inspect or transform a code")
    p.add_argument("action", choices=["info", "transpose", "perp"])
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("product", help="tensor, check or (p,q) product codes")
    p.add_argument("kind", choices=["tensor", "check", "pq"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--q", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("extract", help="realize the duality map as a process")
    p.add_argument("input")
    p.add_argument("--realization", choices=["defect", "minimal"], default="defect")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("extract-product", help="merge process for a product code")
    p.add_argument("kind", choices=["tensor", "check"])
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract_product)

    p = sub.add_parser("verify", help="check operator relations of a process")
    p.add_argument("files", nargs="+", metavar="FILE", help="code(s) followed by the process document")
    p.add_argument("--json", action="store_true", help="machine-readable records")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="run a process on a product input state")
    p.add_argument("process")
    p.add_argument("--input", choices=["plus", "zero"], default="plus")
    p.add_argument("--ancilla", help="label, comma list per ancilla, or amp:a,b")
    p.add_argument("--expect", help="file with a bitstring or one amplitude per line")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", help="low eigenvalues of -J sum checks - h sum X")
    p.add_argument("input")
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("--h", type=float, default=0.0)
    p.add_argument("-k", type=int, default=4)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("perturbation", help="effective-coupling scan for coupled layers")
    p.add_argument("kind", choices=["tensor", "check"])
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--h1", type=float, default=1.0)
    p.add_argument("--h2", type=float, default=1.0)
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("--lambdas", default="50,100,200")
    p.add_argument("--probe", choices=["flip", "plaquette"], default="flip")
    p.set_defaults(func=cmd_perturbation)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ResourceError, AnnihilationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
