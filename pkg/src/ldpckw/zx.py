"""
Phase-free ZX diagrams built from Tanner graphs, and dense oracles for them.

Conventions:

* Z-spider with ``d`` legs: ``|0...0><0...0| + |1...1><1...1|`` (as a tensor).
* X-spider: the Z-spider with a normalized Hadamard on every leg.
* Hadamard edge / Hadamard boundary leg: the normalized 2x2 Hadamard.

Matrices index basis states with wire 0 as the least-significant bit.
No scalar is ever renormalized; compare diagrams up to a global factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .code import ClassicalCode
from .errors import ResourceError
from .f2 import BinaryMatrix

Color = Literal["Z", "X"]
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)
MAX_BOUNDARY_LEGS = 24
DEFAULT_BUDGET = 2**26


@dataclass(frozen=True)
class Leg:
    name: str
    spider: int
    hadamard: bool = False


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    hadamard: bool = False


@dataclass(frozen=True)
class ZxDiagram:
    colors: tuple[Color, ...]
    edges: tuple[Edge, ...] = ()
    inputs: tuple[Leg, ...] = ()
    outputs: tuple[Leg, ...] = ()
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.colors)
        for leg in self.inputs + self.outputs:
            if not 0 <= leg.spider < n:
                raise ValueError(f"leg {leg.name} attaches to unknown spider {leg.spider}")
        for e in self.edges:
            if not (0 <= e.u < n and 0 <= e.v < n) or e.u == e.v:
                raise ValueError(f"bad edge {e}")

    @property
    def num_spiders(self) -> int:
        return len(self.colors)

    def neighbors(self, s: int) -> list[int]:
        out = []
        for e in self.edges:
            if e.u == s:
                out.append(e.v)
            elif e.v == s:
                out.append(e.u)
        return out

    def degree(self, s: int) -> int:
        legs = sum(1 for leg in self.inputs + self.outputs if leg.spider == s)
        return len(self.neighbors(s)) + legs

    def dump(self) -> str:
        """Plain-text adjacency listing, one spider per line."""
        lines = []
        for s, color in enumerate(self.colors):
            label = self.labels[s] if self.labels else str(s)
            nbrs = []
            for e in self.edges:
                if s in (e.u, e.v):
                    other = e.v if e.u == s else e.u
                    nbrs.append(f"{other}{'~' if e.hadamard else ''}")
            legs = [f"in:{leg.name}{'~' if leg.hadamard else ''}" for leg in self.inputs if leg.spider == s]
            legs += [f"out:{leg.name}{'~' if leg.hadamard else ''}" for leg in self.outputs if leg.spider == s]
            lines.append(f"{s} {color} [{label}] nbrs={','.join(nbrs) or '-'} legs={','.join(legs) or '-'}")
        return "\n".join(lines) + "\n"


def kw_diagram(code: ClassicalCode) -> ZxDiagram:
    """Z-spider per bit (input leg), X-spider per check (Hadamard output leg)."""
    n, m = code.n, code.m
    colors: tuple[Color, ...] = ("Z",) * n + ("X",) * m
    edges = tuple(Edge(i, n + a) for i, a in code.tanner_edges())
    inputs = tuple(Leg(f"s{i}", i) for i in range(n))
    outputs = tuple(Leg(f"t{a}", n + a, hadamard=True) for a in range(m))
    labels = tuple(f"bit{i}" for i in range(n)) + tuple(f"check{a}" for a in range(m))
    return ZxDiagram(colors, edges, inputs, outputs, labels)


def product_diagram(c1: ClassicalCode, c2: ClassicalCode, kind: str) -> ZxDiagram:
    """One 3-legged spider per product bit, merging the two layer copies.

    Input legs: all ``alpha`` (by ``j*n1+i``) then all ``beta``; outputs by ``j*n1+i``.
    """
    if kind not in ("tensor", "check"):
        raise ValueError(f"kind must be 'tensor' or 'check', got {kind!r}")
    N = c1.n * c2.n
    color: Color = "Z" if kind == "tensor" else "X"
    out_name = "s" if kind == "tensor" else "g"
    inputs = tuple(Leg(f"a{q}", q) for q in range(N)) + tuple(Leg(f"b{q}", q) for q in range(N))
    outputs = tuple(Leg(f"{out_name}{q}", q) for q in range(N))
    labels = tuple(f"({q % c1.n},{q // c1.n})" for q in range(N))
    return ZxDiagram((color,) * N, (), inputs, outputs, labels)


def fuse(d: ZxDiagram, u: int, v: int) -> ZxDiagram:
    """Merge spider ``v`` into ``u``; they must share a color and a plain edge."""
    if d.colors[u] != d.colors[v]:
        raise ValueError("can only fuse spiders of the same color")
    if not any({e.u, e.v} == {u, v} and not e.hadamard for e in d.edges):
        raise ValueError("spiders are not joined by a plain edge")
    remap = {}
    j = 0
    for s in range(d.num_spiders):
        if s == v:
            continue
        remap[s] = j
        j += 1
    remap[v] = remap[u]
    edges = []
    dropped = False
    for e in d.edges:
        if {e.u, e.v} == {u, v} and not e.hadamard and not dropped:
            dropped = True
            continue
        edges.append(Edge(remap[e.u], remap[e.v], e.hadamard))
    colors = tuple(c for s, c in enumerate(d.colors) if s != v)
    labels = tuple(lbl for s, lbl in enumerate(d.labels) if s != v) if d.labels else ()
    relegs = lambda legs: tuple(Leg(l.name, remap[l.spider], l.hadamard) for l in legs)  # noqa: E731
    return ZxDiagram(colors, tuple(edges), relegs(d.inputs), relegs(d.outputs), labels)


def spider_tensor(color: Color, degree: int) -> np.ndarray:
    if degree == 0:
        return np.array(2.0)
    t = np.zeros((2,) * degree)
    if color == "Z":
        t[(0,) * degree] = 1.0
        t[(1,) * degree] = 1.0
        return t
    # Hadamard on every leg of a Z-spider: support on even-parity strings.
    for bits in itertools.product((0, 1), repeat=degree):
        if sum(bits) % 2 == 0:
            t[bits] = 2.0 ** (1 - degree / 2)
    return t


def contract(d: ZxDiagram, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Dense linear map of shape ``2^|outputs| x 2^|inputs|``.

    Spiders are absorbed in ascending degree order into pairwise contractions;
    any intermediate tensor above ``budget`` entries raises ResourceError.
    """
    n_in, n_out = len(d.inputs), len(d.outputs)
    if n_in + n_out > MAX_BOUNDARY_LEGS:
        raise ResourceError(f"{n_in + n_out} boundary legs exceed the limit of {MAX_BOUNDARY_LEGS}")
    label = itertools.count()
    in_lbl = [next(label) for _ in range(n_in)]
    out_lbl = [next(label) for _ in range(n_out)]
    incident: list[list[int]] = [[] for _ in range(d.num_spiders)]
    tensors: list[tuple[np.ndarray, list[int]]] = []
    for k, leg in enumerate(d.inputs):
        incident[leg.spider].append(in_lbl[k])
    for k, leg in enumerate(d.outputs):
        if leg.hadamard:
            inner = next(label)
            tensors.append((HADAMARD, [out_lbl[k], inner]))
            incident[leg.spider].append(inner)
        else:
            incident[leg.spider].append(out_lbl[k])
    for e in d.edges:
        a, b = next(label), next(label)
        if e.hadamard:
            tensors.append((HADAMARD, [a, b]))
        else:
            b = a
        incident[e.u].append(a)
        incident[e.v].append(b)
    order = sorted(range(d.num_spiders), key=lambda s: (len(incident[s]), s))
    spider_terms = [(spider_tensor(d.colors[s], len(incident[s])), incident[s]) for s in order]
    tensors = spider_terms + tensors
    boundary = set(in_lbl) | set(out_lbl)

    # repeated labels on one tensor (self-loops) are traced immediately
    tensors = [_self_trace(t, lbls) for t, lbls in tensors]
    while len(tensors) > 1:
        best = None
        for x in range(len(tensors)):
            lx = set(tensors[x][1])
            for y in range(x + 1, len(tensors)):
                shared = lx & set(tensors[y][1])
                size = 2 ** (len(lx) + len(tensors[y][1]) - 2 * len(shared))
                key = (0 if shared else 1, size, x, y)
                if best is None or key < best[0]:
                    best = (key, x, y)
        _, x, y = best
        size = best[0][1]
        if size > budget:
            raise ResourceError(f"intermediate tensor of {size} entries exceeds budget {budget}")
        tx, lx = tensors[x]
        ty, ly = tensors[y]
        shared = [l for l in lx if l in ly]
        t = np.tensordot(tx, ty, axes=([lx.index(l) for l in shared], [ly.index(l) for l in shared]))
        merged = [l for l in lx if l not in shared] + [l for l in ly if l not in shared]
        tensors = [tensors[i] for i in range(len(tensors)) if i not in (x, y)] + [(t, merged)]
    t, lbls = tensors[0] if tensors else (np.array(1.0), [])
    assert set(lbls) == boundary, "dangling internal labels after contraction"
    # rows: outputs with wire 0 least significant; columns: inputs likewise
    axes = [lbls.index(l) for l in reversed(out_lbl)] + [lbls.index(l) for l in reversed(in_lbl)]
    t = np.transpose(t, axes) if axes else t
    return np.asarray(t, dtype=complex).reshape(2**n_out, 2**n_in)


def _self_trace(t: np.ndarray, lbls: list[int]) -> tuple[np.ndarray, list[int]]:
    lbls = list(lbls)
    while True:
        dup = next((l for l in lbls if lbls.count(l) > 1), None)
        if dup is None:
            return t, lbls
        i = lbls.index(dup)
        j = lbls.index(dup, i + 1)
        t = np.trace(t, axis1=i, axis2=j)
        lbls = [l for k, l in enumerate(lbls) if k not in (i, j)]


def kw_matrix_oracle(H: BinaryMatrix, max_qubits: int = MAX_BOUNDARY_LEGS) -> np.ndarray:
    """Closed form ``<y|D|x> = 2^(-m/2) (-1)^(y . Hx)`` of the KW map."""
    m, n = H.shape
    if m + n > max_qubits:
        raise ResourceError(f"n + m = {n + m} exceeds {max_qubits}")
    xs = ((np.arange(2**n)[:, None] >> np.arange(n)) & 1).astype(np.int64)
    ys = ((np.arange(2**m)[:, None] >> np.arange(m)) & 1).astype(np.int64)
    Hx = (xs @ H.data.T.astype(np.int64)) % 2
    parity = (ys @ Hx.T) % 2
    return (2.0 ** (-m / 2)) * (1 - 2 * parity).astype(complex)


def normalized_overlap(a: np.ndarray, b: np.ndarray) -> float:
    """``|<a, b>| / (|a| |b|)``: equals 1 iff the matrices agree up to a scalar."""
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return float(na == nb)
    return float(abs(np.vdot(a, b)) / (na * nb))
