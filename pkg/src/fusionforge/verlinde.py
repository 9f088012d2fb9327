"""Fusion coefficients from an eigentable via the Verlinde-like formula.

``N_{i,j}^k = sum_s lambda_{i,s} lambda_{j,s} conj(lambda_{k,s}) / c_s``
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

import numpy as np

from . import _familysum
from .chartables import (HALF, Q, QM1, QP1, Eigentable, build_psl2_table, inner_product, pointwise,
                         verify_reconstruction_assumptions)
from .errors import InconsistentTableError, InvalidArgument, ReconstructionError
from .fusionring import FusionRing

__all__ = ["reconstruct", "inner_product", "oracle_lemma_suite", "LemmaResult", "OracleReport"]


def _as_count(value):
    """Nonnegative integer or None."""
    if isinstance(value, int):
        return value if value >= 0 else None
    if isinstance(value, Fraction):
        if value.denominator == 1 and value >= 0:
            return int(value)
        return None
    r = value.as_rational()
    if r is not None and r.denominator == 1 and r >= 0:
        return int(r)
    return None


def reconstruct(t: Eigentable) -> FusionRing:
    """Fusion ring whose eigentable is ``t``.

    Raises :class:`ReconstructionError` with the offending ``(i, j, k)`` and
    exact value when some coefficient is not a nonnegative integer, and
    :class:`InconsistentTableError` when the orthonormality, duality or unit
    assumptions fail.
    """
    r = t.rank
    pairs, values = _familysum.triple_sums(t)
    N = np.zeros((r, r, r), dtype=np.int64)
    for p, (i, j) in enumerate(pairs):
        base = p * r
        for k in range(r):
            v = values[base + k]
            n = _as_count(v)
            if n is None:
                raise ReconstructionError(
                    f"N[{i},{j},{k}] = {v} is not a nonnegative integer", (i, j, k), v)
            N[i, j, k] = N[j, i, k] = n
    report = verify_reconstruction_assumptions(t)
    if not report.ok:
        raise InconsistentTableError("; ".join(report.failures))
    bad = _familysum.character_violation(t, N)
    if bad is not None:
        raise InconsistentTableError(f"character property fails at (i, j, s) = {bad}")
    return FusionRing(N, t.row_labels, report.dual, t.family, t.q)


# -- closed-form inner products from the case analysis of the tables ---------

def _d(a, b) -> int:
    return 1 if a == b else 0


def _hits(total: int, a: int, b: int, c: int) -> bool:
    s = a + b + c
    return s == total or s == 2 * max(a, b, c)


Lemma = tuple[str, tuple[str, str, str], Callable[[int, int, int, int], int]]


def _lemmas_even() -> list[Lemma]:
    M, S, P = QM1, Q, QP1
    return [
        ("<x_{q-1}x_{q-1}, x_{q-1}>", (M, M, M), lambda q, a, b, c: 0 if _hits(q + 1, a, b, c) else 1),
        ("<x_{q-1}x_{q-1}, x_q>", (M, M, S), lambda q, a, b, c: 1 - _d(a, b)),
        ("<x_{q-1}x_{q-1}, x_{q+1}>", (M, M, P), lambda q, a, b, c: 1),
        ("<x_q x_q, x_{q-1}>", (S, S, M), lambda q, a, b, c: 1),
        ("<x_q x_q, x_q>", (S, S, S), lambda q, a, b, c: 1),
        ("<x_q x_q, x_{q+1}>", (S, S, P), lambda q, a, b, c: 1),
        ("<x_{q+1}x_{q+1}, x_{q-1}>", (P, P, M), lambda q, a, b, c: 1),
        ("<x_{q+1}x_{q+1}, x_q>", (P, P, S), lambda q, a, b, c: 1 + _d(a, b)),
        ("<x_{q+1}x_{q+1}, x_{q+1}>", (P, P, P), lambda q, a, b, c: 2 if _hits(q - 1, a, b, c) else 1),
        ("<x_{q-1}x_q, x_{q+1}>", (M, S, P), lambda q, a, b, c: 1),
    ]


def _lemmas_odd_common() -> list[Lemma]:
    M, S, P = QM1, Q, QP1
    return [
        ("<x_{q-1}x_{q-1}, x_{q-1}>", (M, M, M), lambda q, a, b, c: 1 if _hits((q + 1) // 2, a, b, c) else 2),
        ("<x_{q-1}x_{q-1}, x_q>", (M, M, S), lambda q, a, b, c: 2 - _d(a, b)),
        ("<x_{q-1}x_{q-1}, x_{q+1}>", (M, M, P), lambda q, a, b, c: 2),
        ("<x_{q-1}x_q, x_q>", (M, S, S), lambda q, a, b, c: 2),
        ("<x_{q-1}x_q, x_{q+1}>", (M, S, P), lambda q, a, b, c: 2),
        ("<x_{q-1}x_{q+1}, x_{q+1}>", (M, P, P), lambda q, a, b, c: 2),
        ("<x_q x_q, x_q>", (S, S, S), lambda q, a, b, c: 2),
        ("<x_q x_q, x_{q+1}>", (S, S, P), lambda q, a, b, c: 2),
        ("<x_q x_{q+1}, x_{q+1}>", (S, P, P), lambda q, a, b, c: 2 + _d(b, c)),
        ("<x_{q+1}x_{q+1}, x_{q+1}>", (P, P, P), lambda q, a, b, c: 3 if _hits((q - 1) // 2, a, b, c) else 2),
    ]


def _lemmas_3mod4() -> list[Lemma]:
    H, M, S, P = HALF, QM1, Q, QP1
    return [
        ("<x_h x_h, x_h>", (H, H, H), lambda q, a, b, c: _d(a, b) * (1 - _d(a, c))),
        ("<x_h x_h, x_{q-1}>", (H, H, M), lambda q, a, b, c: _d(a, b)),
        ("<x_h x_h, x_q>", (H, H, S), lambda q, a, b, c: 0),
        ("<x_h x_h, x_{q+1}>", (H, H, P), lambda q, a, b, c: 1 - _d(a, b)),
        ("<x_h x_{q-1}, x_{q-1}>", (H, M, M), lambda q, a, b, c: 1 - _d(b + c, (q + 1) // 4)),
        ("<x_h x_{q-1}, x_q>", (H, M, S), lambda q, a, b, c: 1),
        ("<x_h x_{q-1}, x_{q+1}>", (H, M, P), lambda q, a, b, c: 1),
        ("<x_h x_q, x_q>", (H, S, S), lambda q, a, b, c: 1),
        ("<x_h x_q, x_{q+1}>", (H, S, P), lambda q, a, b, c: 1),
        ("<x_h x_{q+1}, x_{q+1}>", (H, P, P), lambda q, a, b, c: 1),
    ] + _lemmas_odd_common()


def _lemmas_1mod4() -> list[Lemma]:
    H, M, S, P = HALF, QM1, Q, QP1
    return [
        ("<x_h x_h, x_h>", (H, H, H), lambda q, a, b, c: _d(a, b) * _d(a, c)),
        ("<x_h x_h, x_{q-1}>", (H, H, M), lambda q, a, b, c: 1 - _d(a, b)),
        ("<x_h x_h, x_q>", (H, H, S), lambda q, a, b, c: 1),
        ("<x_h x_h, x_{q+1}>", (H, H, P), lambda q, a, b, c: _d(a, b)),
        ("<x_h x_{q-1}, x_{q-1}>", (H, M, M), lambda q, a, b, c: 1),
        ("<x_h x_{q-1}, x_q>", (H, M, S), lambda q, a, b, c: 1),
        ("<x_h x_{q-1}, x_{q+1}>", (H, M, P), lambda q, a, b, c: 1),
        ("<x_h x_q, x_q>", (H, S, S), lambda q, a, b, c: 1),
        ("<x_h x_q, x_{q+1}>", (H, S, P), lambda q, a, b, c: 1),
        ("<x_h x_{q+1}, x_{q+1}>", (H, P, P), lambda q, a, b, c: 1 + _d(b + c, (q - 1) // 4)),
    ] + _lemmas_odd_common()


def lemma_table(q: int) -> list[Lemma]:
    if q % 2 == 0:
        return _lemmas_even()
    return _lemmas_3mod4() if q % 4 == 3 else _lemmas_1mod4()


@dataclass
class LemmaResult:
    name: str
    checked: int
    mismatches: list[tuple] = field(default_factory=list)


@dataclass
class OracleReport:
    q: int
    lemmas: list[LemmaResult]
    orthonormal: bool
    codegrees_ok: bool

    @property
    def ok(self) -> bool:
        return self.orthonormal and self.codegrees_ok and all(not l.mismatches for l in self.lemmas)

    def to_json(self) -> dict:
        return {
            "codegrees_ok": self.codegrees_ok,
            "lemmas": [{"checked": l.checked, "mismatches": [[list(p), e, str(g)] for p, e, g in l.mismatches],
                        "name": l.name} for l in self.lemmas],
            "ok": self.ok,
            "orthonormal": self.orthonormal,
            "q": self.q,
        }


def oracle_lemma_suite(q: int, t: Eigentable | None = None) -> OracleReport:
    """Evaluate every closed-form inner product against the table.

    Each value ``<x_a x_b, x_c>`` is computed with :func:`inner_product` on the
    pointwise product of rows, independently of :func:`reconstruct`.
    Mismatches are reported as ``((c_a, c_b, c_c), expected, obtained)``.
    """
    if q < 2:
        raise InvalidArgument("q must be >= 2")
    t = build_psl2_table(q) if t is None else t
    by_family: dict[str, list[int]] = {}
    for i, lab in enumerate(t.row_labels):
        by_family.setdefault(lab.family, []).append(i)
    results = []
    for name, fams, rhs in lemma_table(q):
        res = LemmaResult(name, 0)
        idx = [by_family.get(f, []) for f in fams]
        for i, j, k in product(*idx):
            got = inner_product(t, pointwise(t.entries[i], t.entries[j]), t.entries[k])
            c = tuple(t.row_labels[x].charparam for x in (i, j, k))
            want = rhs(q, *c)
            res.checked += 1
            if got != want:
                res.mismatches.append((c, want, got))
        results.append(res)
    r = t.rank
    ortho = all(inner_product(t, t.entries[i], t.entries[k]) == _d(i, k) for i in range(r) for k in range(i, r))
    total = t.fpdim_total
    cod = all(Fraction(total, size) == Fraction(c) for size, c in zip(t.class_sizes, t.codegrees))
    return OracleReport(q, results, ortho, cod)
