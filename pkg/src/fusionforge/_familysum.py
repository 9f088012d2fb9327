"""Exact column-family sums over an eigentable.

Within one column group (equal codegree) every entry is lifted to a common
order ``n`` and a common denominator ``D``; products of entries are then
accumulated as integer vectors in the group ring ``Z[x]/(x^n - 1)``.  Each
accumulated vector is mapped to ``Q(zeta_n)`` by reduction modulo ``Phi_n``
(one integer matrix product); it is rational iff only the constant power-basis
coordinate survives.  Irrational group sums are carried as
:class:`CyclotomicNumber` and added in the full lcm field at the end.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .exactnum import CyclotomicNumber, _power_basis, rational

_FLOAT_EXACT = 2.0 ** 52


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=64)
def _reduction_matrix(n: int) -> np.ndarray:
    rows = [_power_basis({e: 1}, n) for e in range(n)]
    mat = np.array(rows, dtype=object)
    if mat.size and max(abs(int(v)) for v in mat.flat) > 2 ** 20:
        raise OverflowError(f"reduction matrix for order {n} has large entries")
    return mat.astype(np.int64)


class _Group:
    """One column group lifted to a common order and denominator."""

    def __init__(self, t, cols):
        self.cols = cols
        self.codegree = Fraction(t.codegrees[cols[0]])
        n, d = 1, 1
        for s in cols:
            for row in t.entries:
                x = row[s]
                n = _lcm(n, x.order)
                d = _lcm(d, x.int_terms()[1])
        self.n, self.den = n, d
        # per column: arrays of (row, exponent, integer coefficient)
        self.terms = []
        for s in cols:
            rows, exps, coefs = [], [], []
            for i, row in enumerate(t.entries):
                x = row[s]
                coeffs, den = x.int_terms()
                f = n // x.order
                m = d // den
                for e, c in coeffs.items():
                    rows.append(i)
                    exps.append(e * f)
                    coefs.append(c * m)
            self.terms.append((np.array(rows, dtype=np.int64), np.array(exps, dtype=np.int64),
                               np.array(coefs, dtype=np.int64)))


def _accumulate(slots: int, n: int, chunks):
    """Sum integer weights into a (slots, n) int64 array, exactly."""
    total = np.zeros(slots * n, dtype=np.int64)
    for idx, w in chunks:
        if idx.size == 0:
            continue
        if float(np.abs(w).sum()) < _FLOAT_EXACT:
            total += np.rint(np.bincount(idx, weights=w.astype(np.float64),
                                         minlength=slots * n)).astype(np.int64)
        else:
            np.add.at(total, idx, w)
    return total.reshape(slots, n)


def _finish(acc: np.ndarray, n: int, scale: Fraction):
    """Reduce group-ring rows; returns (rational values or None, acc)."""
    mat = _reduction_matrix(n)
    bound = float(np.abs(acc).max(initial=0)) * n * float(np.abs(mat).max(initial=0))
    if bound < _FLOAT_EXACT:
        red = np.rint(acc.astype(np.float64) @ mat.astype(np.float64)).astype(np.int64)
    else:
        red = acc @ mat
    rational_mask = ~np.any(red[:, 1:], axis=1) if red.shape[1] > 1 else np.ones(len(red), bool)
    return red[:, 0], rational_mask, scale


def _to_cyc(row: np.ndarray, n: int, scale: Fraction) -> CyclotomicNumber:
    nz = np.nonzero(row)[0]
    x = CyclotomicNumber._raw(n, {int(e): int(row[e]) for e in nz}, 1)
    return x * scale


def _combine(t, slots, per_group):
    """Add group contributions; per_group yields (group, acc array, power).

    Rational parts are summed as integer numerators over a common
    denominator; slots that come out integral are returned as ``int``.
    """
    parts = []
    extra: dict[int, CyclotomicNumber] = {}
    for g, acc, power in per_group:
        scale = Fraction(1, g.den ** power) / g.codegree
        const, mask, _ = _finish(acc, g.n, scale)
        const = np.where(mask, const, 0)
        parts.append((const, scale))
        for m in np.nonzero(~mask)[0]:
            part = _to_cyc(acc[m], g.n, scale)
            extra[int(m)] = extra.get(int(m), rational(0)) + part
    den = 1
    for _, scale in parts:
        den = _lcm(den, scale.denominator)
    num = np.zeros(slots, dtype=object)
    for const, scale in parts:
        num = num + const.astype(object) * (scale.numerator * (den // scale.denominator))
    out = [int(v) // den if v % den == 0 else Fraction(int(v), den) for v in num]
    for m, x in extra.items():
        x = x + out[m]
        r = x.as_rational()
        out[m] = x if r is None else (int(r) if r.denominator == 1 else r)
    return out


def groups(t):
    cached = getattr(t, "_fs_groups", None)
    if cached is None:
        cached = [_Group(t, cols) for cols in t.column_groups()]
        try:
            t._fs_groups = cached
        except AttributeError:
            pass
    return cached


def pair_sums(t):
    """Gram matrix ``G[i][k] = sum_s lambda_is conj(lambda_ks) / c_s``."""
    r = t.rank

    def gen():
        for g in groups(t):
            chunks = []
            for rows, exps, coefs in g.terms:
                slot = rows[:, None] * r + rows[None, :]
                e = (exps[:, None] - exps[None, :]) % g.n
                idx = (slot * g.n + e).ravel()
                chunks.append((idx, (coefs[:, None] * coefs[None, :]).ravel()))
            yield g, _accumulate(r * r, g.n, chunks), 2

    flat = _combine(t, r * r, gen())
    return [flat[i * r:(i + 1) * r] for i in range(r)]


def triple_sums(t):
    """Verlinde sums for ``i <= j``: returns (pairs, values) with
    ``values[p * r + k] = sum_s lambda_is lambda_js conj(lambda_ks) / c_s``
    for ``pairs[p] = (i, j)``."""
    r = t.rank
    pairs = [(i, j) for i in range(r) for j in range(i, r)]
    pid = np.full((r, r), -1, dtype=np.int64)
    for p, (i, j) in enumerate(pairs):
        pid[i, j] = p
    slots = len(pairs) * r

    def gen():
        for g in groups(t):
            n = g.n
            chunks = []
            for rows, exps, coefs in g.terms:
                a, b = np.meshgrid(np.arange(len(rows)), np.arange(len(rows)), indexing="ij")
                keep = rows[a] <= rows[b]
                a, b = a[keep], b[keep]
                p = pid[rows[a], rows[b]]
                pe = exps[a] + exps[b]
                pc = coefs[a] * coefs[b]
                idx = ((p[:, None] * r + rows[None, :]) * n + (pe[:, None] - exps[None, :]) % n).ravel()
                chunks.append((idx, (pc[:, None] * coefs[None, :]).ravel()))
            yield g, _accumulate(slots, n, chunks), 3

    return pairs, _combine(t, slots, gen())


def character_violation(t, N):
    """First ``(i, j, s)`` with ``sum_k N_ij^k lambda_ks != lambda_is lambda_js``, or None.

    Both sides are compared as integer vectors in ``Z[x]/(x^n - 1)`` reduced
    modulo ``Phi_n``; no floating point is involved.
    """
    r = t.rank
    N = np.asarray(N, dtype=np.int64).reshape(r * r, r)
    for g in groups(t):
        n = g.n
        red = _reduction_matrix(n)
        for s, (rows, exps, coefs) in zip(g.cols, g.terms):
            V = np.zeros((r, n), dtype=np.int64)
            np.add.at(V, (rows, exps), coefs)
            lhs = (N @ V) * g.den
            a, b = np.meshgrid(np.arange(len(rows)), np.arange(len(rows)), indexing="ij")
            a, b = a.ravel(), b.ravel()
            idx = (rows[a] * r + rows[b]) * n + (exps[a] + exps[b]) % n
            rhs = _accumulate(r * r, n, [(idx, coefs[a] * coefs[b])])
            diff = (lhs - rhs) @ red
            bad = np.nonzero(np.any(diff != 0, axis=1))[0]
            if bad.size:
                p = int(bad[0])
                return p // r, p % r, s
    return None
