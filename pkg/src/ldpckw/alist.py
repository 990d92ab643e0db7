"""
Reading and writing parity-check matrices in the alist interchange format.

Layout (one item per line, 1-indexed, lists zero-padded to the maximum degree)::

    n m
    max_col_degree max_row_degree
    column degrees
    row degrees
    n lines: checks on each bit
    m lines: bits in each check
"""

from __future__ import annotations

import numpy as np

from .code import ClassicalCode
from .errors import AlistParseError
from .f2 import BinaryMatrix


class _Lines:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def ints(self, what: str, count: int | None = None) -> tuple[int, list[int]]:
        # blank lines are only allowed where a section may legitimately be empty
        if self.pos >= len(self.lines):
            raise AlistParseError(self.pos + 1, f"file ends before {what}")
        lineno = self.pos + 1
        raw = self.lines[self.pos].split()
        self.pos += 1
        try:
            vals = [int(tok) for tok in raw]
        except ValueError:
            raise AlistParseError(lineno, f"non-integer token in {what}") from None
        if count is not None and len(vals) != count:
            raise AlistParseError(lineno, f"{what}: expected {count} entries, found {len(vals)}")
        return lineno, vals


def parse_alist(text: str, name: str = "") -> ClassicalCode:
    src = _Lines(text)
    ln, (n, m) = src.ints("the size line", 2)
    if n < 0 or m < 0:
        raise AlistParseError(ln, "negative size")
    ln, (max_col, max_row) = src.ints("the max-degree line", 2)
    ln_cd, col_deg = src.ints("column degrees", n)
    ln_rd, row_deg = src.ints("row degrees", m)
    if col_deg and max(col_deg) > max_col or any(d < 0 for d in col_deg):
        raise AlistParseError(ln_cd, "column degree exceeds the declared maximum")
    if row_deg and max(row_deg) > max_row or any(d < 0 for d in row_deg):
        raise AlistParseError(ln_rd, "row degree exceeds the declared maximum")

    H = np.zeros((m, n), dtype=np.uint8)
    for i in range(n):
        ln, vals = src.ints(f"the check list of bit {i + 1}")
        entries = _unpad(vals, col_deg[i], max_col, m, ln)
        for a in entries:
            H[a - 1, i] = 1
    seen = np.zeros((m, n), dtype=np.uint8)
    for a in range(m):
        ln, vals = src.ints(f"the bit list of check {a + 1}")
        entries = _unpad(vals, row_deg[a], max_row, n, ln)
        for i in entries:
            if not H[a, i - 1]:
                raise AlistParseError(ln, f"check {a + 1} lists bit {i}, but bit {i} does not list check {a + 1}")
            seen[a, i - 1] = 1
        if seen[a].sum() != H[a].sum():
            raise AlistParseError(ln, f"check {a + 1} omits bits that list it")
    for rest in range(src.pos, len(src.lines)):
        if src.lines[rest].strip():
            raise AlistParseError(rest + 1, "unexpected trailing content")
    return ClassicalCode(BinaryMatrix(H), name)


def _unpad(vals: list[int], degree: int, width: int, bound: int, lineno: int) -> list[int]:
    # accept lists padded to the max degree or written unpadded
    if len(vals) not in (degree, width):
        raise AlistParseError(lineno, f"expected {degree} entries (or {width} padded), found {len(vals)}")
    entries, pad = vals[:degree], vals[degree:]
    if any(p != 0 for p in pad):
        raise AlistParseError(lineno, "padding must be zeros")
    for v in entries:
        if not 1 <= v <= bound:
            raise AlistParseError(lineno, f"index {v} out of range 1..{bound}")
    if len(set(entries)) != len(entries):
        raise AlistParseError(lineno, "repeated index")
    return entries


def emit_alist(code: ClassicalCode) -> str:
    H = code.H.data
    m, n = H.shape
    cols = [[int(a) + 1 for a in np.flatnonzero(H[:, i])] for i in range(n)]
    rows = [[int(i) + 1 for i in np.flatnonzero(H[a])] for a in range(m)]
    max_col = max((len(c) for c in cols), default=0)
    max_row = max((len(r) for r in rows), default=0)
    pad = lambda xs, w: " ".join(str(v) for v in xs + [0] * (w - len(xs)))  # noqa: E731
    lines = [f"{n} {m}", f"{max_col} {max_row}",
             " ".join(str(len(c)) for c in cols), " ".join(str(len(r)) for r in rows)]
    lines += [pad(c, max_col) for c in cols]
    lines += [pad(r, max_row) for r in rows]
    return "\n".join(lines) + "\n"


def read_alist(path) -> ClassicalCode:
    from pathlib import Path

    p = Path(path)
    return parse_alist(p.read_text(), p.stem)


def parse_dense(text: str, name: str = "") -> ClassicalCode:
    """Fallback reader: one row of 0/1 per line (spaces optional)."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.replace(" ", "").strip()
        if not s:
            continue
        if set(s) - {"0", "1"}:
            raise AlistParseError(lineno, "dense rows may only contain 0 and 1")
        rows.append([int(c) for c in s])
    if len({len(r) for r in rows}) > 1:
        raise AlistParseError(len(rows), "dense rows have different lengths")
    data = np.array(rows, dtype=np.uint8) if rows else np.zeros((0, 0), dtype=np.uint8)
    return ClassicalCode(BinaryMatrix(data), name)
