"""Fusion rings written down directly from the closed-form fusion rules.

These generators never touch a character table; they are the independent
side of the crosscheck against :func:`fusionforge.verlinde.reconstruct`.
Basis order matches the table builders: unit, half-degree pair, x_{q-1,c},
x_{q,1}, x_{q+1,c} (and x_{1,c}, x_{q-1,1} for the Etingof family).
"""
from __future__ import annotations

from typing import Callable, Iterable

import numpy as np

from .chartables import BIG, HALF, LINEAR, Q, QM1, QP1, TRIVIAL, RowLabel
from .errors import InvalidArgument
from .fusionring import FusionRing

ONE = "one"

Term = tuple[str, int, int]  # (kind, charparam, coefficient)


# -- index predicates ---------------------------------------------------------

def delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def hits(total: int, c1: int, c2: int, c3: int) -> bool:
    """``c1 + c2 + c3`` equals ``total`` or ``2 max(c1, c2, c3)``."""
    s = c1 + c2 + c3
    return s == total or s == 2 * max(c1, c2, c3)


def misses(total: int, c1: int, c2: int, c3: int) -> bool:
    """``c1 + c2 + c3`` differs from ``total`` and from ``2 max(c1, c2, c3)``."""
    return not hits(total, c1, c2, c3)


# -- assembly -----------------------------------------------------------------

class _Basis:
    def __init__(self, q: int, families: list[tuple[str, str, int, Iterable[int]]]):
        # families: (kind, label family, degree, charparams)
        self.q = q
        self.labels: list[RowLabel] = []
        self.index: dict[tuple[str, int], int] = {}
        self.params: dict[str, list[int]] = {}
        for kind, fam, degree, cs in families:
            cs = list(cs)
            self.params[kind] = cs
            for c in cs:
                self.index[(kind, c)] = len(self.labels)
                self.labels.append(RowLabel(degree, c, fam))

    def every(self, kind: str, coef: Callable[[int], int] | int = 1) -> list[Term]:
        f = coef if callable(coef) else (lambda c: coef)
        return [(kind, c, f(c)) for c in self.params.get(kind, [])]

    def build(self, rule: Callable[[str, int, str, int], list[Term]], family: str) -> FusionRing:
        r = len(self.labels)
        N = np.zeros((r, r, r), dtype=np.int64)
        items = list(self.index.items())
        for (ka, ca), i in items:
            for (kb, cb), j in items:
                if j < i:
                    continue
                for kind, c, coef in rule(ka, ca, kb, cb):
                    if coef:
                        k = self.index[(kind, c)]
                        N[i, j, k] += coef
                        if i != j:
                            N[j, i, k] += coef
        return FusionRing(N, self.labels, None, family, self.q)


def _unit_rule(basis: _Basis, rule):
    """Wrap a rule table so that products with the unit are the identity and
    each unordered pair is looked up in a canonical kind order."""
    order = list(basis.params)

    def full(ka, ca, kb, cb):
        if ka == ONE:
            return [(kb, cb, 1)]
        if kb == ONE:
            return [(ka, ca, 1)]
        if order.index(ka) > order.index(kb):
            ka, ca, kb, cb = kb, cb, ka, ca
        return rule(ka, ca, kb, cb)

    return full


# -- q even -------------------------------------------------------------------

def rules_even(q: int) -> FusionRing:
    if q < 2 or q % 2:
        raise InvalidArgument("rules_even needs an even q >= 2")
    B = _Basis(q, [(ONE, TRIVIAL, 1, [1]), ("M", QM1, q - 1, range(1, q // 2 + 1)), ("S", Q, q, [1]),
                   ("P", QP1, q + 1, range(1, (q - 2) // 2 + 1))])

    def rule(ka, c1, kb, c2):
        d = delta(c1, c2)
        if (ka, kb) == ("M", "M"):
            return ([(ONE, 1, d)] + B.every("M", lambda c3: int(misses(q + 1, c1, c2, c3)))
                    + [("S", 1, 1 - d)] + B.every("P"))
        if (ka, kb) == ("M", "S"):
            return B.every("M", lambda c: 1 - delta(c1, c)) + [("S", 1, 1)] + B.every("P")
        if (ka, kb) == ("M", "P"):
            return B.every("M") + [("S", 1, 1)] + B.every("P")
        if (ka, kb) == ("S", "S"):
            return [(ONE, 1, 1)] + B.every("M") + [("S", 1, 1)] + B.every("P")
        if (ka, kb) == ("S", "P"):
            return B.every("M") + [("S", 1, 1)] + B.every("P", lambda c: 1 + delta(c2, c))
        if (ka, kb) == ("P", "P"):
            return ([(ONE, 1, d)] + B.every("M") + [("S", 1, 1 + d)]
                     + B.every("P", lambda c3: 2 if hits(q - 1, c1, c2, c3) else 1))
        raise AssertionError((ka, kb))

    return B.build(_unit_rule(B, rule), "psl2")


# -- q = 3 mod 4 --------------------------------------------------------------

def rules_3mod4(q: int) -> FusionRing:
    if q < 3 or q % 4 != 3:
        raise InvalidArgument("rules_3mod4 needs q = 3 mod 4")
    m = (q - 3) // 4
    B = _Basis(q, [(ONE, TRIVIAL, 1, [1]), ("H", HALF, (q - 1) // 2, [1, 2]), ("M", QM1, q - 1, range(1, m + 1)),
                   ("S", Q, q, [1]), ("P", QP1, q + 1, range(1, m + 1))])
    quarter = (q + 1) // 4

    def rule(ka, c1, kb, c2):
        d = delta(c1, c2)
        if (ka, kb) == ("H", "H"):
            return ([(ONE, 1, 1 - d)] + B.every("H", lambda c3: d * (1 - delta(c1, c3)))
                    + B.every("M", d) + B.every("P", 1 - d))
        if (ka, kb) == ("H", "M"):
            return (B.every("H", lambda c3: 1 - delta(c1, c3)) + B.every("M", lambda c3: 1 - delta(c2 + c3, quarter))
                    + [("S", 1, 1)] + B.every("P"))
        if (ka, kb) == ("H", "S"):
            return B.every("M") + [("S", 1, 1)] + B.every("P")
        if (ka, kb) == ("H", "P"):
            return B.every("H", lambda c3: delta(c1, c3)) + B.every("M") + [("S", 1, 1)] + B.every("P")
        if (ka, kb) == ("M", "M"):
            return ([(ONE, 1, d)] + B.every("H", 1 - delta(c1 + c2, quarter))
                    + B.every("M", lambda c3: 1 if hits((q + 1) // 2, c1, c2, c3) else 2)
                    + [("S", 1, 2 - d)] + B.every("P", 2))
        return _odd_common(B, ka, c1, kb, c2)

    return B.build(_unit_rule(B, rule), "psl2")


def _odd_common(B: _Basis, ka, c1, kb, c2) -> list[Term]:
    """Rules shared by both odd branches (no half-degree factor)."""
    q = B.q
    d = delta(c1, c2)
    if (ka, kb) == ("M", "S"):
        return B.every("H") + B.every("M", lambda c: 2 - delta(c1, c)) + [("S", 1, 2)] + B.every("P", 2)
    if (ka, kb) == ("M", "P"):
        return B.every("H") + B.every("M", 2) + [("S", 1, 2)] + B.every("P", 2)
    if (ka, kb) == ("S", "S"):
        return [(ONE, 1, 1)] + B.every("H") + B.every("M", 2) + [("S", 1, 2)] + B.every("P", 2)
    if (ka, kb) == ("S", "P"):
        return B.every("H") + B.every("M", 2) + [("S", 1, 2)] + B.every("P", lambda c: 2 + delta(c2, c))
    if (ka, kb) == ("P", "P"):
        h = 1 + delta(c1 + c2, (q - 1) // 4) if q % 4 == 1 else 1
        return ([(ONE, 1, d)] + B.every("H", h) + B.every("M", 2) + [("S", 1, 2 + d)]
                + B.every("P", lambda c3: 3 if hits((q - 1) // 2, c1, c2, c3) else 2))
    raise AssertionError((ka, kb))


# -- q = 1 mod 4 --------------------------------------------------------------

def rules_1mod4(q: int) -> FusionRing:
    if q < 5 or q % 4 != 1:
        raise InvalidArgument("rules_1mod4 needs q = 1 mod 4")
    B = _Basis(q, [(ONE, TRIVIAL, 1, [1]), ("H", HALF, (q + 1) // 2, [1, 2]),
                   ("M", QM1, q - 1, range(1, (q - 1) // 4 + 1)), ("S", Q, q, [1]),
                   ("P", QP1, q + 1, range(1, (q - 5) // 4 + 1))])
    quarter = (q - 1) // 4

    def rule(ka, c1, kb, c2):
        d = delta(c1, c2)
        if (ka, kb) == ("H", "H"):
            return ([(ONE, 1, d)] + B.every("H", lambda c3: d * delta(c1, c3)) + B.every("M", 1 - d)
                    + [("S", 1, 1)] + B.every("P", d))
        if (ka, kb) == ("H", "M"):
            return B.every("H", lambda c3: 1 - delta(c1, c3)) + B.every("M") + [("S", 1, 1)] + B.every("P")
        if (ka, kb) == ("H", "S"):
            return B.every("H") + B.every("M") + [("S", 1, 1)] + B.every("P")
        if (ka, kb) == ("H", "P"):
            return (B.every("H", lambda c3: delta(c1, c3)) + B.every("M") + [("S", 1, 1)]
                    + B.every("P", lambda c3: 1 + delta(c2 + c3, quarter)))
        if (ka, kb) == ("M", "M"):
            return ([(ONE, 1, d)] + B.every("H")
                    + B.every("M", lambda c3: 1 if hits((q + 1) // 2, c1, c2, c3) else 2)
                    + [("S", 1, 2 - d)] + B.every("P", 2))
        return _odd_common(B, ka, c1, kb, c2)

    return B.build(_unit_rule(B, rule), "psl2")


# -- Etingof family -----------------------------------------------------------

def rules_etingof(q: int) -> FusionRing:
    """Group ring of C_{q-1} plus one element x with x_{1,c} x = x and
    x^2 = sum_c x_{1,c} + (q-2) x."""
    if q < 2:
        raise InvalidArgument("rules_etingof needs q >= 2")
    n = q - 1
    r = q
    N = np.zeros((r, r, r), dtype=np.int64)
    big = r - 1
    for a in range(n):
        for b in range(n):
            N[a, b, (a + b) % n] = 1
        N[a, big, big] = N[big, a, big] = 1
    N[big, big, :n] = 1
    N[big, big, big] = q - 2
    labels = [RowLabel(1, c, LINEAR) for c in range(n)] + [RowLabel(q - 1, 1, BIG)]
    dual = [(-c) % n for c in range(n)] + [big]
    return FusionRing(N, labels, dual, "etingof", q)


def rules_psl2(q: int) -> FusionRing:
    if q < 2:
        raise InvalidArgument("q must be >= 2")
    if q % 2 == 0:
        return rules_even(q)
    return rules_3mod4(q) if q % 4 == 3 else rules_1mod4(q)


def closed_ring(q: int, family: str) -> FusionRing:
    if family == "psl2":
        return rules_psl2(q)
    if family == "etingof":
        return rules_etingof(q)
    raise InvalidArgument(f"unknown family {family!r}")


def crosscheck(q: int, family: str = "psl2") -> bool:
    """Closed-form tensor equals the Verlinde reconstruction entrywise."""
    from .chartables import build_table
    from .verlinde import reconstruct

    closed = closed_ring(q, family)
    recon = reconstruct(build_table(q, family))
    return (closed.labels == recon.labels and np.array_equal(closed.N, recon.N)
            and closed.dual == recon.dual)


def crosscheck_diff(q: int, family: str = "psl2") -> list[tuple[int, int, int, int, int]]:
    """Entries ``(i, j, k, closed, verlinde)`` where the two tensors differ."""
    from .chartables import build_table
    from .verlinde import reconstruct

    a = closed_ring(q, family).N
    b = reconstruct(build_table(q, family)).N
    return [(int(i), int(j), int(k), int(a[i, j, k]), int(b[i, j, k])) for i, j, k in np.argwhere(a != b)]
