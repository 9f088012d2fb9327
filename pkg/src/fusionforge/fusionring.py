"""Fusion rings: data structure, axiom checks and structural statistics."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .chartables import CUSTOM, Eigentable, RowLabel
from .errors import InconsistentTableError, InvalidArgument, UnsupportedError


class FusionRing:
    """Structure constants ``N[i, j, k] = N_{i,j}^k`` with the unit at index 0.

    The printed fusion matrix of ``x_i`` is ``N[i]``: row ``j``, column ``k``.
    """

    def __init__(self, N, labels: Sequence[RowLabel] | None = None, dual: Sequence[int] | None = None,
                 family: str = CUSTOM, q: int | None = None):
        arr = np.array(N, dtype=np.int64)
        if arr.ndim != 3 or len(set(arr.shape)) != 1:
            raise InvalidArgument("N must be an r x r x r tensor")
        if (arr < 0).any():
            raise InvalidArgument("fusion coefficients must be nonnegative")
        arr.setflags(write=False)
        self.N = arr
        self.rank = arr.shape[0]
        if labels is None:
            labels = [RowLabel(1, i, CUSTOM) for i in range(self.rank)]
        self.labels = tuple(labels)
        if len(self.labels) != self.rank:
            raise InvalidArgument("wrong number of labels")
        if dual is None:
            dual = _duals_from_tensor(arr)
        self.dual = tuple(int(d) for d in dual)
        if sorted(self.dual) != list(range(self.rank)):
            raise InvalidArgument("dual is not a permutation")
        self.family = family
        self.q = q
        self.unit = 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return self.rank == other.rank and np.array_equal(self.N, other.N) and self.dual == other.dual

    __hash__ = None

    def __repr__(self) -> str:
        return f"FusionRing(family={self.family!r}, q={self.q}, rank={self.rank})"

    def matrix(self, i: int) -> np.ndarray:
        return self.N[i]

    def product(self, i: int, j: int) -> dict[int, int]:
        return {int(k): int(v) for k, v in enumerate(self.N[i, j]) if v}

    def to_json(self) -> dict:
        return {
            "N": self.N.tolist(),
            "dual": list(self.dual),
            "family": self.family,
            "labels": [l.to_json() for l in self.labels],
            "q": self.q,
            "rank": self.rank,
            "version": 1,
        }

    @classmethod
    def from_json(cls, data) -> FusionRing:
        try:
            if int(data.get("version", 1)) != 1:
                raise InvalidArgument(f"unsupported ring JSON version {data.get('version')}")
            N = data["N"]
            labels = [RowLabel.from_json(l) for l in data["labels"]] if "labels" in data else None
            dual = [int(d) for d in data["dual"]] if "dual" in data else None
            q = data.get("q")
            ring = cls(N, labels, dual, str(data.get("family", CUSTOM)), None if q is None else int(q))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            if isinstance(exc, InvalidArgument):
                raise
            raise InvalidArgument(f"malformed ring JSON: {exc}") from exc
        if "rank" in data and int(data["rank"]) != ring.rank:
            raise InvalidArgument("rank field disagrees with N")
        return ring


def _duals_from_tensor(N: np.ndarray) -> list[int]:
    r = N.shape[0]
    dual = []
    for i in range(r):
        cands = [k for k in range(r) if N[i, k, 0] == 1]
        dual.append(cands[0] if len(cands) == 1 else i)
    if sorted(dual) != list(range(r)):
        return list(range(r))
    return dual


@dataclass
class AxiomReport:
    neutral: bool
    dual: bool
    associative: bool
    frobenius: bool
    commutative: bool
    violations: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.neutral and self.dual and self.associative and self.frobenius

    def to_json(self) -> dict:
        return {
            "associative": self.associative,
            "commutative": self.commutative,
            "dual": self.dual,
            "frobenius": self.frobenius,
            "neutral": self.neutral,
            "violations": [list(v) for v in self.violations[:100]],
            "violation_count": len(self.violations),
        }


def verify_axioms(R: FusionRing, max_violations: int = 1000) -> AxiomReport:
    """Check neutral, dual, associativity, Frobenius reciprocity and commutativity.

    Associativity is checked as ``M_i M_j = sum_k N_{ij}^k M_k`` for the left
    multiplication matrices; a failure is reported at ``(i, j, k, l)`` with
    ``sum_m N_ij^m N_mk^l != sum_m N_jk^m N_im^l``.
    """
    N = R.N
    r = R.rank
    dual = np.array(R.dual)
    viol: list[tuple] = []
    eye = np.eye(r, dtype=np.int64)

    neutral = True
    for i, k in zip(*np.nonzero(N[0] != eye)):
        viol.append(("neutral", 0, int(i), int(k)))
        neutral = False
    for i, k in zip(*np.nonzero(N[:, 0, :] != eye)):
        viol.append(("neutral", int(i), 0, int(k)))
        neutral = False

    dmat = np.zeros((r, r), dtype=np.int64)
    dmat[np.arange(r), dual] = 1
    dual_ok = bool(np.array_equal(dual[dual], np.arange(r)))
    if not dual_ok:
        viol.append(("dual-involution",))
    for i, k in zip(*np.nonzero(N[:, :, 0] != dmat)):
        viol.append(("dual", int(i), int(k)))
        dual_ok = False
    for i, k in zip(*np.nonzero(N[:, :, 0].T != dmat)):
        viol.append(("dual", int(k), int(i)))
        dual_ok = False

    # associativity: (x_i x_j) x_k = x_i (x_j x_k)
    # float64 products are exact while every partial sum stays below 2^53
    top = int(N.max()) if N.size else 0
    M = N.astype(np.float64) if top * top * r < 2 ** 52 else N
    flat = M.reshape(r * r, r)
    lhs = (flat @ M.reshape(r, r * r)).reshape(r, r, r, r)  # sum_m N_ij^m N_mk^l
    # sum_m N_jk^m N_im^l, computed with axes (j, k, i, l)
    rhs = (flat @ M.transpose(1, 0, 2).reshape(r, r * r)).reshape(r, r, r, r).transpose(2, 0, 1, 3)
    bad = np.argwhere(lhs != rhs)
    assoc = bad.size == 0
    for idx in bad[:max_violations]:
        viol.append(("associativity", *map(int, idx)))

    # Frobenius reciprocity: N_ij^k = N_{i*,k}^j = N_{k,j*}^i
    a = N
    b = N[dual].transpose(0, 2, 1)                 # b[i,j,k] = N[i*, k, j]
    c = N[:, dual, :].transpose(2, 1, 0)           # c[i,j,k] = N[k, j*, i]
    frob_bad = np.argwhere((a != b) | (a != c))
    frob = frob_bad.size == 0
    for idx in frob_bad[:max_violations]:
        viol.append(("frobenius", *map(int, idx)))

    comm = bool(np.array_equal(N, N.transpose(1, 0, 2)))
    viol.sort()
    return AxiomReport(neutral, dual_ok, assoc, frob, comm, viol)


def character_property_holds(R: FusionRing, values: Sequence) -> bool:
    """``sum_k N_ij^k v_k = v_i v_j`` for integer or exact values."""
    v = list(values)
    r = R.rank
    for i in range(r):
        for j in range(r):
            total = 0
            for k in np.nonzero(R.N[i, j])[0]:
                total = total + int(R.N[i, j, k]) * v[k]
            if total != v[i] * v[j]:
                return False
    return True


def fpdims(R: FusionRing, t: Eigentable | None = None, integral: bool = True) -> list[int]:
    """Frobenius-Perron dimensions.

    With a table, the degree column is checked against the character
    property.  Without one, the Perron vector of ``sum_i M_i^T`` is computed
    numerically, rounded, and accepted only if it satisfies
    ``d_i d_j = sum_k N_ij^k d_k`` exactly (a positive solution of these
    equations is unique, so this certifies the result).
    """
    if t is not None:
        if t.rank != R.rank:
            raise InvalidArgument("table and ring ranks differ")
        d = list(t.degrees)
        if not character_property_holds(R, d):
            raise InconsistentTableError("degree column is not a character of the ring")
        return d
    if R.rank == 1:
        return [1]
    # d is a common eigenvector of every M_i^T, hence Perron vector of sum_i M_i^T
    A = R.N.sum(axis=0).T.astype(float)
    vals, vecs = np.linalg.eig(A)
    top = int(np.argmax(vals.real))
    vec = np.abs(vecs[:, top].real)
    vec = vec / vec[0]
    d = [int(round(x)) for x in vec]
    if min(d) >= 1 and character_property_holds(R, d):
        return d
    if integral:
        raise UnsupportedError(f"Perron data is not integral: {vec.tolist()}")
    return vec.tolist()


def fusion_type(dims: Sequence[int]) -> list[list[int]]:
    return [[d, m] for d, m in sorted(Counter(dims).items())]


def fpdim_total(dims: Sequence[int]) -> int:
    return sum(d * d for d in dims)


def is_simple(R: FusionRing) -> bool:
    r = R.rank
    support = R.N > 0
    for b in range(1, r):
        closed = {0, b, R.dual[b]}
        frontier = list(closed)
        while frontier:
            new = set()
            for i in list(closed):
                for j in frontier:
                    for k in np.nonzero(support[i, j] | support[j, i])[0]:
                        k = int(k)
                        for x in (k, R.dual[k]):
                            if x not in closed and x not in new:
                                new.add(x)
            closed |= new
            frontier = list(new)
        if len(closed) < r:
            return False
    return True


def multiplicity(R: FusionRing) -> int:
    return int(R.N.max())


def self_dual_count(R: FusionRing) -> int:
    return sum(1 for i, d in enumerate(R.dual) if i == d)


def is_frobenius_type(R: FusionRing, dims: Sequence[int] | None = None) -> bool:
    dims = fpdims(R) if dims is None else list(dims)
    if any(int(d) != d for d in dims):
        raise UnsupportedError("Frobenius type is only defined here for integral rings")
    total = fpdim_total(dims)
    return all(total % int(d) == 0 for d in dims)


def trivial_ring() -> FusionRing:
    return FusionRing([[[1]]], [RowLabel(1, 1, "trivial")], [0])
