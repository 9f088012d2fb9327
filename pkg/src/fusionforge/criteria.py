"""Categorification criteria for commutative eigentables and fusion rings.

Table criteria take an :class:`Eigentable`; the two spectrum criteria and the
modular divisibility test take a :class:`FusionRing`.  Every report is exact:
``undecided`` only appears when a sign decision runs into the precision cap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator

import numpy as np

from . import _familysum
from .chartables import Eigentable, build_table
from .errors import InvalidArgument, UndecidableError, UnsupportedError
from .exactnum import CyclotomicNumber
from .fusionring import FusionRing, fpdim_total, fpdims

PASS, FAIL, UNDECIDED = "pass", "fail", "undecided"
EXACT, FAST, EXHAUSTIVE = "exact", "fast_path_lemma", "exhaustive_search"

TABLE_CRITERIA = ("schur", "ostrik", "drinfeld", "cyclotomic", "isaacs", "frobenius")
RING_CRITERIA = ("zero_spectrum", "one_spectrum", "modular_divisibility")
ALL_CRITERIA = TABLE_CRITERIA + RING_CRITERIA


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (Fraction, CyclotomicNumber)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


@dataclass
class CriterionReport:
    criterion: str
    verdict: str
    witness: dict | None = None
    method: str = EXACT
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "details": _jsonable(self.details),
            "method": self.method,
            "verdict": self.verdict,
            "witness": _jsonable(self.witness),
        }


# -- Schur product ------------------------------------------------------------

class _SchurEngine:
    """Sums ``sum_i lambda_ij1 lambda_ij2 lambda_ij3 / d_i`` for all triples.

    Each column is lifted to its column group's order.  For one triple, a row
    whose non-constant entries all come from a single group contributes to
    that group's ring ``Z[x]/(x^n - 1)``; a row with non-constant entries from
    two groups (never the case for the built tables) is multiplied out
    exactly.
    """

    def __init__(self, t: Eigentable):
        self.t = t
        r = t.rank
        self.groups = _familysum.groups(t)
        self.gid = np.zeros(r, dtype=np.int64)
        self.E, self.C, self.irr = [None] * r, [None] * r, [None] * r
        for gi, g in enumerate(self.groups):
            for s, (rows, exps, coefs) in zip(g.cols, g.terms):
                self.gid[s] = gi
                counts = np.bincount(rows, minlength=r)
                T = max(1, int(counts.max(initial=0)))
                E = np.zeros((r, T), dtype=np.int64)
                C = np.zeros((r, T), dtype=np.int64)
                slot = np.zeros(r, dtype=np.int64)
                for i, e, c in zip(rows.tolist(), exps.tolist(), coefs.tolist()):
                    E[i, slot[i]] = e
                    C[i, slot[i]] = c
                    slot[i] += 1
                self.E[s], self.C[s] = E, C
                # rows needing the group ring: any term off the constant power
                self.irr[s] = ((E != 0) & (C != 0)).any(axis=1)
        d = t.degrees
        L = 1
        for x in d:
            L = L * x // gcd(L, x)
        self.L = L
        self.w = np.array([L // x for x in d], dtype=np.int64)

    def _exact_row(self, i, cols):
        row = self.t.entries[i]
        return row[cols[0]] * row[cols[1]] * row[cols[2]] * Fraction(1, self.t.degrees[i])

    def values(self) -> Iterator[tuple[tuple[int, int, int], Fraction | CyclotomicNumber]]:
        t = self.t
        r = t.rank
        gs = self.groups
        for s1 in range(r):
            for s2 in range(s1, r):
                g1, g2 = int(self.gid[s1]), int(self.gid[s2])
                E12 = (self.E[s1][:, :, None] + self.E[s2][:, None, :]).reshape(r, -1)
                C12 = (self.C[s1][:, :, None] * self.C[s2][:, None, :]).reshape(r, -1) * self.w[:, None]
                i1, i2 = self.irr[s1], self.irr[s2]
                pt = np.where(i1 & i2 & (g1 != g2), -2, np.where(i1, g1, np.where(i2, g2, -1)))
                for G, g in enumerate(gs):
                    S3 = [s for s in g.cols if s >= s2]
                    if not S3:
                        continue
                    yield from self._batch(s1, s2, S3, G, E12, C12, pt)

    def _batch(self, s1, s2, S3, G, E12, C12, pt):
        gs = self.groups
        B = len(S3)
        # columns may carry different term counts; pad with zero coefficients
        T = max(self.E[s].shape[1] for s in S3)
        E3 = np.stack([np.pad(self.E[s], ((0, 0), (0, T - self.E[s].shape[1]))) for s in S3])
        C3 = np.stack([np.pad(self.C[s], ((0, 0), (0, T - self.C[s].shape[1]))) for s in S3])
        irr3 = np.stack([self.irr[s] for s in S3])
        exps = E12[None, :, :, None] + E3[:, :, None, :]
        coefs = C12[None, :, :, None] * C3[:, :, None, :]
        ptb = np.broadcast_to(pt, irr3.shape)
        target = np.where(irr3, np.where((ptb == -1) | (ptb == G), G, -2), ptb)
        den = (gs[int(self.gid[s1])].den * gs[int(self.gid[s2])].den * gs[G].den) * self.L
        const = np.zeros(B, dtype=object)
        extra: dict[int, CyclotomicNumber] = {}
        bidx = np.broadcast_to(np.arange(B)[:, None], target.shape)
        for tv in np.unique(target).tolist():
            mask = target == tv
            if tv == -2:
                for b, i in zip(*np.nonzero(mask)):
                    x = self._exact_row(int(i), (s1, s2, S3[b]))
                    extra[int(b)] = extra.get(int(b), 0) + x
                continue
            n = 1 if tv == -1 else gs[tv].n
            e = exps[mask] % n
            w = coefs[mask]
            idx = (bidx[mask][:, None, None] * n + e).ravel()
            acc = _familysum._accumulate(B, n, [(idx, w.ravel())])
            red0, rational, _ = _familysum._finish(acc, n, Fraction(1))
            const = const + np.where(rational, red0, 0).astype(object)
            for b in np.nonzero(~rational)[0]:
                x = _familysum._to_cyc(acc[b], n, Fraction(1, den))
                extra[int(b)] = extra.get(int(b), 0) + x
        for b, s3 in enumerate(S3):
            v = Fraction(int(const[b]), den)
            if b in extra:
                x = extra[b] + v
                q = x.as_rational() if isinstance(x, CyclotomicNumber) else Fraction(x)
                v = x if q is None else q
            yield (s1, s2, s3), v


def schur_values(t: Eigentable) -> Iterator[tuple[tuple[int, int, int], Fraction | CyclotomicNumber]]:
    """All Schur sums for ``j1 <= j2 <= j3`` (column indices from 0)."""
    return _SchurEngine(t).values()


def schur_product(t: Eigentable, require_rational: bool | None = None) -> CriterionReport:
    """Every Schur sum must be nonnegative.

    For the built families every sum is rational; ``require_rational``
    (default: on for them) turns an irrational sum into an error.
    """
    if require_rational is None:
        require_rational = t.family in ("psl2", "etingof")
    count = irrational = 0
    for triple, v in schur_values(t):
        count += 1
        if isinstance(v, Fraction):
            if v < 0:
                return CriterionReport("schur", FAIL, {"triple": list(triple), "value": v}, EXACT,
                                       {"triples": count})
            continue
        irrational += 1
        if require_rational:
            raise AssertionError(f"Schur sum at {triple} is irrational: {v}")
        if not v.is_real():
            return CriterionReport("schur", FAIL, {"triple": list(triple), "value": v, "reason": "not real"},
                                   EXACT, {"triples": count})
        try:
            sign = v.real_sign()
        except UndecidableError:
            return CriterionReport("schur", UNDECIDED, {"triple": list(triple), "value": v}, EXACT,
                                   {"triples": count})
        if sign < 0:
            return CriterionReport("schur", FAIL, {"triple": list(triple), "value": v}, EXACT,
                                   {"triples": count})
    return CriterionReport("schur", PASS, None, EXACT, {"irrational_values": irrational, "triples": count})


# -- codegree criteria --------------------------------------------------------

def ostrik_sum(t: Eigentable) -> Fraction:
    return sum((1 / Fraction(c) ** 2 for c in t.codegrees), Fraction(0))


def ostrik(t: Eigentable) -> CriterionReport:
    s = ostrik_sum(t)
    bound = 1 + 1 / Fraction(t.codegrees[0])
    ok = 2 * s <= bound
    det = {"sum_inverse_squares": s, "bound": bound}
    return CriterionReport("ostrik", PASS if ok else FAIL, None if ok else {"lhs": 2 * s, "rhs": bound},
                           EXACT, det)


def drinfeld_center(t: Eigentable) -> CriterionReport:
    c1 = Fraction(t.codegrees[0])
    for j, c in enumerate(t.codegrees):
        ratio = c1 / Fraction(c)
        if ratio.denominator != 1:
            return CriterionReport("drinfeld", FAIL, {"column": j, "ratio": ratio})
    return CriterionReport("drinfeld", PASS)


def extended_cyclotomic(t: Eigentable) -> CriterionReport:
    for i, row in enumerate(t.entries):
        for j, x in enumerate(row):
            if not x.is_cyclotomic_integer():
                return CriterionReport("cyclotomic", FAIL, {"entry": [i, j], "value": x})
    return CriterionReport("cyclotomic", PASS)


def isaacs(t: Eigentable) -> CriterionReport:
    c1 = Fraction(t.codegrees[0])
    degrees = t.degrees
    routed = full = 0
    for i, row in enumerate(t.entries):
        for j, x in enumerate(row):
            if x.is_zero():
                continue
            factor = c1 / (degrees[i] * Fraction(t.codegrees[j]))
            if factor.denominator == 1 and x.is_cyclotomic_integer():
                routed += 1
                continue
            full += 1
            v = x * factor
            if not v.is_cyclotomic_integer():
                return CriterionReport("isaacs", FAIL, {"entry": [i, j], "value": v})
    return CriterionReport("isaacs", PASS, None, EXACT, {"integer_factor": routed, "full_product": full})


def frobenius(t: Eigentable) -> CriterionReport:
    total = t.fpdim_total
    for i, d in enumerate(t.degrees):
        if total % d:
            return CriterionReport("frobenius", FAIL, {"index": i, "degree": d, "fpdim": total})
    return CriterionReport("frobenius", PASS)


# -- spectrum criteria --------------------------------------------------------

def _masks(S: np.ndarray, axis: int) -> np.ndarray:
    """Bitmask (uint64) of the nonzero positions along ``axis``."""
    r = S.shape[axis]
    bits = np.left_shift(np.uint64(1), np.arange(r, dtype=np.uint64))
    moved = np.moveaxis(S, axis, -1).astype(np.uint64)
    return np.bitwise_or.reduce(moved * bits, axis=-1)


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def _single_bit(x: np.ndarray) -> np.ndarray:
    return (x != 0) & ((x & (x - np.uint64(1))) == 0)


class _SpectrumSearch:
    """Search for the index tuples of the zero and one spectrum criteria.

    When the tensor satisfies the neutral, dual and Frobenius axioms no
    witness can have the unit among ``i4, ..., i9`` (lines (1) with (2),
    resp. (1') with (4'), collapse otherwise), and those indices are skipped.
    Arbitrary tensors are searched in full.

    Line (2) couples the pairs ``(i4, i7)``, ``(i5*, i8)``, ``(i6, i9*)``
    through the supports of their products, so those six indices are
    bound first: ``(i4, i7, i5, i8)`` in one vectorised sweep, then all
    ``(i6, i9)`` admissible for the support key of the first two pairs
    (cached per key).  ``i1``, ``i2``, ``i3`` are then read off as bitmask
    intersections from line (1) and the remaining lines are tested with
    precomputed pair sums ``P[a,b,c,d] = sum_k N_ab^k N_cd^k``.
    """

    def __init__(self, N: np.ndarray, dual):
        N = np.asarray(N, dtype=np.int64)
        r = N.shape[0]
        if r > 64:
            raise UnsupportedError("spectrum search supports rank <= 64")
        self.N, self.r = N, r
        self.d = np.asarray(dual, dtype=np.int64)
        S = N > 0
        self.SUPP = _masks(S, 2)              # [a, b] -> {k : N_ab^k != 0}
        self.ONES = _masks(N == 1, 2)         # [a, b] -> {k : N_ab^k == 1}
        self.L1 = _masks(S, 1)                # [a, c] -> {x : N_{a,x}^c != 0}
        self.L2 = _masks(S, 0)                # [b, c] -> {x : N_{x,b}^c != 0}
        self._P = None
        self.skip_unit = _unit_free(N, self.d)

    @property
    def P(self) -> np.ndarray:
        if self._P is None:
            r = self.r
            flat = self.N.reshape(r * r, r)
            self._P = (flat @ flat.T).reshape(r, r, r, r)
        return self._P

    def run(self, kind: str, collect_all: bool = False) -> list[tuple]:
        r, d = self.r, self.d
        SUPP, ONES = self.SUPP, self.ONES
        SUPPd, ONESd = SUPP[d], ONES[d]           # [i5, i8] -> supp N_{i5*, i8}
        S3 = SUPP[:, d]                           # [i6, i9] -> supp N_{i6, i9*}
        O3 = ONES[:, d]
        one = kind == "one"
        found: list[tuple] = []
        cache: dict = {}
        supp, ones = SUPP.tolist(), ONES.tolist()
        full = (1 << r) - 1
        fullu = np.uint64(full)
        shifts = np.arange(r, dtype=np.uint64)[None, :]
        lo = 1 if self.skip_unit else 0
        for i4 in range(lo, r):
            m12 = SUPP[i4][:, None, None] & SUPPd[None, :, :]            # (i7, i5, i8)
            c2 = SUPP[:, i4][None, :, None] & self.L2[:, None, :]
            valid = c2 != 0
            if one:
                o12 = ONES[i4][:, None, None] & ONESd[None, :, :]
                valid &= (m12 & o12) != 0
            if lo:
                valid[0, :, :] = valid[:, 0, :] = valid[:, :, 0] = False
            pos = np.nonzero(valid)
            if not pos[0].size:
                continue
            keys = np.stack([m12[pos], o12[pos] if one else np.zeros_like(m12[pos])], axis=1)
            uniq, inv = np.unique(keys, axis=0, return_inverse=True)
            inv = inv.reshape(-1)
            goods = []
            for m, o in uniq.tolist():
                good = cache.get((m, o))
                if good is None:
                    if one:
                        x = S3 & np.uint64(m)
                        good = _single_bit(x) & ((x & np.uint64(o) & O3) != 0)
                    else:
                        good = (S3 & np.uint64(m)) == 0
                    if lo:
                        good[0, :] = good[:, 0] = False
                    good = good if good.any() else False
                    cache[(m, o)] = good
                goods.append(good)
            live = np.array([g is not False for g in goods])
            for n in np.nonzero(live[inv])[0]:
                i7, i5, i8 = int(pos[0][n]), int(pos[1][n]), int(pos[2][n])
                key = tuple(uniq[inv[n]].tolist())
                good = goods[inv[n]]
                cand1 = self.L1[i4][:, None] & SUPP[i7][None, :]       # (i6, i9)
                cand3 = SUPP[i5][:, None] & SUPP[i8][None, :]
                ok = good & (cand1 != 0) & (cand3 != 0)
                if not ok.any():
                    continue
                ones2 = _bits(int(c2[i7, i5, i8]))
                # allowed i3 per i1 under line (3) resp. (4'), any admissible i2
                allow = np.zeros(r, dtype=np.uint64)
                for i2 in ones2:
                    allow |= (~SUPP[i2] & fullu) if one else ONES[i2]
                p6, p9 = np.nonzero(ok)
                c1v, c3v = cand1[p6, p9], cand3[p6, p9]
                has1 = ((c1v[:, None] >> shifts) & np.uint64(1)) != 0          # (position, i1)
                hit = (has1 & ((allow[None, :] & c3v[:, None]) != 0)).any(axis=1)
                for i6, i9 in zip(p6[hit], p9[hit]):
                    i6, i9 = int(i6), int(i9)
                    i0 = None
                    if one:
                        i0 = _bits(key[0] & int(S3[i6, i9]))[0]
                    m3 = int(cand3[i6, i9])
                    for i1 in _bits(int(cand1[i6, i9])):
                        for i2 in ones2:
                            # line (3) resp. (4') as a mask on i3
                            third = m3 & (full ^ supp[i2][i1]) if one else m3 & ones[i2][i1]
                            for i3 in _bits(third):
                                w = (i1, i2, i3, i4, i5, i6, i7, i8, i9)
                                if self._lines(kind, i0, w):
                                    found.append(((i0,) + w) if one else w)
                                    if not collect_all:
                                        return found
        return found

    def _lines(self, kind, i0, w) -> bool:
        N, P, d = self.N, self.P, self.d
        i1, i2, i3, i4, i5, i6, i7, i8, i9 = w
        if kind == "zero":
            if N[i2, i1, i3] != 1:
                return False
            if not (P[i5, i4, i3, d[i1]] == 1 or P[i2, d[i4], i3, d[i6]] == 1 or P[d[i5], i2, i6, d[i1]] == 1):
                return False
            return bool(P[i2, i7, i3, d[i9]] == 1 or P[i8, d[i7], i3, d[i1]] == 1
                        or P[d[i2], i8, i1, d[i9]] == 1)
        if N[i2, i1, i3] != 0:
            return False
        if not (P[i5, i4, i8, d[i7]] == 1 or P[i2, d[i4], i8, d[i0]] == 1 or P[d[i5], i2, i0, d[i7]] == 1):
            return False
        if not (P[i5, i0, i3, d[i9]] == 1 or P[i8, d[i0], i3, d[i6]] == 1 or P[d[i5], i8, i6, d[i9]] == 1):
            return False
        return bool(P[i4, i7, i6, d[i9]] == 1 or P[i0, d[i7], i6, d[i1]] == 1
                    or P[d[i4], i0, i1, d[i9]] == 1)


def _unit_free(N: np.ndarray, d: np.ndarray) -> bool:
    r = N.shape[0]
    eye = np.eye(r, dtype=np.int64)
    if not (np.array_equal(N[0], eye) and np.array_equal(N[:, 0, :], eye)):
        return False
    dmat = np.zeros((r, r), dtype=np.int64)
    dmat[np.arange(r), d] = 1
    if not np.array_equal(N[:, :, 0], dmat) or not np.array_equal(d[d], np.arange(r)):
        return False
    # N_ij^k = N_{i*,k}^j = N_{k,j*}^i
    return bool(np.array_equal(N, N[d].transpose(0, 2, 1)) and np.array_equal(N, N[:, d, :].transpose(2, 1, 0)))


def spectrum_witnesses(N, dual, kind: str, collect_all: bool = True) -> list[tuple]:
    """All (or the first) index tuples satisfying the criterion's conditions.

    Tuples are ``(i1, ..., i9)`` for ``kind="zero"`` and ``(i0, ..., i9)``
    for ``kind="one"``, with the unit at index 0.  ``N`` need not satisfy any
    fusion axiom.
    """
    if kind not in ("zero", "one"):
        raise InvalidArgument("kind must be 'zero' or 'one'")
    return sorted(_SpectrumSearch(N, dual).run(kind, collect_all))


def naive_spectrum_witnesses(N, dual, kind: str) -> list[tuple]:
    """Reference enumeration over every index tuple (small ranks only).

    Every condition is evaluated by fancy indexing on the full index grid,
    with no search order or pruning.
    """
    N = np.asarray(N, dtype=np.int64)
    r = N.shape[0]
    if r > 7:
        raise UnsupportedError("naive enumeration is limited to rank <= 7")
    d = np.asarray(dual, dtype=np.int64)
    Nd = N[d]                          # Nd[a, b, k] = N[a*, b, k]
    Ndd = N[:, d]                      # Ndd[a, b, k] = N[a, b*, k]
    P = np.einsum("abk,cdk->abcd", N, N)
    T = np.einsum("abk,cdk,efk->abcdef", N, Nd, Ndd)
    out = []
    for i1 in range(r):
        g = np.ix_(*[np.arange(r)] * 8)
        i2, i3, i4, i5, i6, i7, i8, i9 = g
        nz = ((N[i4, i1, i6] != 0) & (N[i5, i4, i2] != 0) & (N[i5, i6, i3] != 0) & (N[i7, i9, i1] != 0)
              & (N[i2, i7, i8] != 0) & (N[i8, i9, i3] != 0))
        tri = T[i4, i7, i5, i8, i6, i9]
        if kind == "zero":
            ok = nz & (tri == 0) & (N[i2, i1, i3] == 1)
            ok &= (P[i5, i4, i3, d[i1]] == 1) | (P[i2, d[i4], i3, d[i6]] == 1) | (P[d[i5], i2, i6, d[i1]] == 1)
            ok &= (P[i2, i7, i3, d[i9]] == 1) | (P[i8, d[i7], i3, d[i1]] == 1) | (P[d[i2], i8, i1, d[i9]] == 1)
            out += [(i1,) + tuple(map(int, w)) for w in np.argwhere(ok)]
            continue
        base = nz & (tri == 1) & (N[i2, i1, i3] == 0)
        for i0 in range(r):
            ok = base & (N[i4, i7, i0] == 1) & (Nd[i5, i8, i0] == 1) & (Ndd[i6, i9, i0] == 1)
            ok &= (P[i5, i4, i8, d[i7]] == 1) | (P[i2, d[i4], i8, d[i0]] == 1) | (P[d[i5], i2, i0, d[i7]] == 1)
            ok &= (P[i5, i0, i3, d[i9]] == 1) | (P[i8, d[i0], i3, d[i6]] == 1) | (P[d[i5], i8, i6, d[i9]] == 1)
            ok &= (P[i4, i7, i6, d[i9]] == 1) | (P[i0, d[i7], i6, d[i1]] == 1) | (P[d[i4], i0, i1, d[i9]] == 1)
            out += [(i0, i1) + tuple(map(int, w)) for w in np.argwhere(ok)]
    return sorted(out)


def _common_support(R: FusionRing) -> list[int]:
    """Indices k with N_ij^k != 0 for all non-unit i, j."""
    if R.rank < 2:
        return list(range(R.rank))
    S = R.N[1:, 1:] > 0
    return [int(k) for k in np.nonzero(S.all(axis=(0, 1)))[0]]


def prezero_index(R: FusionRing) -> int | None:
    ks = _common_support(R)
    return ks[0] if ks else None


def preone_indices(R: FusionRing) -> tuple[int, int] | None:
    ks = _common_support(R)
    return (ks[0], ks[1]) if len(ks) >= 2 else None


_NAMES0 = ("i1", "i2", "i3", "i4", "i5", "i6", "i7", "i8", "i9")


def _spectrum(R: FusionRing, kind: str, mode: str) -> CriterionReport:
    name = f"{kind}_spectrum"
    if mode not in ("fast", "exhaustive"):
        raise InvalidArgument("mode must be 'fast' or 'exhaustive'")
    if mode == "fast":
        hyp = prezero_index(R) if kind == "zero" else preone_indices(R)
        if hyp is not None:
            ks = [hyp] if kind == "zero" else list(hyp)
            return CriterionReport(name, PASS, None, FAST,
                                   {"k": ks, "labels": [str(R.labels[k]) for k in ks]})
    found = _SpectrumSearch(R.N, R.dual).run(kind)
    det = {"fast_hypothesis": False} if mode == "fast" else {}
    if not found:
        return CriterionReport(name, PASS, None, EXHAUSTIVE, det)
    names = (("i0",) if kind == "one" else ()) + _NAMES0
    return CriterionReport(name, FAIL, dict(zip(names, found[0])), EXHAUSTIVE, det)


def zero_spectrum(R: FusionRing, mode: str = "fast") -> CriterionReport:
    """Fast mode passes on a common support index of all non-unit products
    (falling back to the search otherwise); exhaustive mode always searches."""
    return _spectrum(R, "zero", mode)


def one_spectrum(R: FusionRing, mode: str = "fast") -> CriterionReport:
    return _spectrum(R, "one", mode)


# -- modular divisibility -----------------------------------------------------

def modular_divisibility(R: FusionRing, dims=None) -> CriterionReport:
    """``fail`` when some ``d_i^2`` does not divide ``FPdim``: then no
    pseudo-unitary modular categorification exists."""
    dims = list(fpdims(R)) if dims is None else [int(x) for x in dims]
    total = fpdim_total(dims)
    bad = [i for i, x in enumerate(dims) if total % (x * x)]
    det = {"fpdim": total, "obstruction": bool(bad)}
    if bad:
        i = bad[0]
        return CriterionReport("modular_divisibility", FAIL,
                               {"index": i, "dim": dims[i], "fpdim": total, "failing": bad}, EXACT, det)
    return CriterionReport("modular_divisibility", PASS, None, EXACT, det)


# -- battery ------------------------------------------------------------------

def run_table_criteria(t: Eigentable, only=None) -> list[CriterionReport]:
    funcs = {"schur": schur_product, "ostrik": ostrik, "drinfeld": drinfeld_center,
             "cyclotomic": extended_cyclotomic, "isaacs": isaacs, "frobenius": frobenius}
    return [funcs[c](t) for c in TABLE_CRITERIA if only is None or c in only]


def run_all(q: int, family: str = "psl2", only=None, exhaustive_spectrum: bool = False,
            table: Eigentable | None = None, ring: FusionRing | None = None) -> list[CriterionReport]:
    """Build the table and ring of ``(q, family)`` and run every criterion."""
    if q < 2:
        raise InvalidArgument("q must be >= 2")
    if only is not None:
        unknown = set(only) - set(ALL_CRITERIA)
        if unknown:
            raise InvalidArgument(f"unknown criteria: {sorted(unknown)}")
    t = build_table(q, family) if table is None else table
    reports = run_table_criteria(t, only)
    need_ring = only is None or any(c in only for c in RING_CRITERIA)
    if need_ring:
        if ring is None:
            from .verlinde import reconstruct
            ring = reconstruct(t)
        mode = "exhaustive" if exhaustive_spectrum else "fast"
        if only is None or "zero_spectrum" in only:
            reports.append(zero_spectrum(ring, mode))
        if only is None or "one_spectrum" in only:
            reports.append(one_spectrum(ring, mode))
        if only is None or "modular_divisibility" in only:
            reports.append(modular_divisibility(ring, t.degrees))
    return reports
