"""Independent reference computations used by several test modules.

Nothing here imports the package's exact arithmetic: tables are evaluated
with plain complex floats and groups are built from matrices mod p.
"""
import cmath
from itertools import product

import numpy as np


def table_to_complex(t) -> np.ndarray:
    out = np.zeros((t.rank, t.rank), dtype=complex)
    for i, row in enumerate(t.entries):
        for j, x in enumerate(row):
            coeffs, den = x.int_terms()
            out[i, j] = sum(c * cmath.exp(2j * cmath.pi * e / x.order) for e, c in coeffs.items()) / den
    return out


def float_verlinde(t) -> np.ndarray:
    """``N_ij^k = sum_s lambda_is lambda_js conj(lambda_ks) / c_s`` in floats, rounded."""
    lam = table_to_complex(t)
    inv_c = np.array([1.0 / float(c) for c in t.codegrees])
    N = np.einsum("is,js,ks,s->ijk", lam, lam, lam.conj(), inv_c)
    R = np.rint(N.real).astype(np.int64)
    assert np.abs(N - R).max() < 1e-6, "float Verlinde is not integral"
    return R


def _classes(codes: np.ndarray, conj) -> list[int]:
    """Orbit sizes of the conjugation action; ``conj(x)`` returns codes of all g x g^-1."""
    seen = set()
    sizes = []
    for x in codes.tolist():
        if x in seen:
            continue
        orbit = set(conj(x).tolist())
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def psl2_class_sizes(p: int) -> list[int]:
    """Conjugacy class sizes of PSL(2, p), p prime, by brute force."""
    mats = np.array([m for m in product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1])

    def code(M):
        a = (M[:, 0] * p ** 3 + M[:, 1] * p ** 2 + M[:, 2] * p + M[:, 3])
        n = (-M) % p
        b = (n[:, 0] * p ** 3 + n[:, 1] * p ** 2 + n[:, 2] * p + n[:, 3])
        return np.minimum(a, b)

    a, b, c, d = mats.T
    inv = np.stack([d, (-b) % p, (-c) % p, a], axis=1)
    codes = np.unique(code(mats))
    lookup = {}
    for m, k in zip(mats.tolist(), code(mats).tolist()):
        lookup.setdefault(k, m)

    def conj(k):
        x = np.array(lookup[k])
        gx0 = (a * x[0] + b * x[2]) % p
        gx1 = (a * x[1] + b * x[3]) % p
        gx2 = (c * x[0] + d * x[2]) % p
        gx3 = (c * x[1] + d * x[3]) % p
        r = np.stack([(gx0 * inv[:, 0] + gx1 * inv[:, 2]) % p, (gx0 * inv[:, 1] + gx1 * inv[:, 3]) % p,
                      (gx2 * inv[:, 0] + gx3 * inv[:, 2]) % p, (gx2 * inv[:, 1] + gx3 * inv[:, 3]) % p], axis=1)
        return code(r)

    return _classes(codes, conj)


def agl1_class_sizes(p: int) -> list[int]:
    """Conjugacy class sizes of x -> a x + b over F_p (order p(p-1))."""
    A, B = np.meshgrid(np.arange(1, p), np.arange(p), indexing="ij")
    A, B = A.ravel(), B.ravel()
    codes = A * p + B

    def conj(k):
        x, y = divmod(k, p)
        # g h g^-1 with g = (A, B), h = (x, y): slope x, intercept A y + B (1 - x)
        return x * p + (A * y + B * (1 - x)) % p

    return _classes(codes, conj)


# Classical character degrees of small PSL(2, q)
CLASSICAL_DEGREES = {
    2: [1, 1, 2],          # S_3
    3: [1, 1, 1, 3],       # A_4
    4: [1, 3, 3, 4, 5],    # A_5
    5: [1, 3, 3, 4, 5],    # A_5
    7: [1, 3, 3, 6, 7, 8],
    9: [1, 5, 5, 8, 8, 9, 10],   # A_6
}
