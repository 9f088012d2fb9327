"""Search for nonpointed simple integral modular fusion types of small rank.

For such a category with dimensions ``d_i`` and ``D = sum d_i^2`` every
``D / d_i^2`` is a positive integer, and these integers differ by rational
squares.  Writing ``D / d_i^2 = c s_i^2`` turns the problem into
``sum_i 1/s_i^2 = c``, which a bounded depth-first search enumerates
completely.  The dimensions are recovered as ``d_i = s_max / s_i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterator

from .errors import InvalidArgument

MAX_TERMS = 11


def is_prime_power(n: int) -> bool:
    """True for ``p^a`` with ``p`` prime and ``a >= 1``; 1 is not one."""
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True


def _ceil_sqrt(x: Fraction) -> int:
    """Smallest integer s >= 1 with s^2 >= x."""
    if x <= 1:
        return 1
    s = isqrt(x.numerator // x.denominator)
    while s * s < x:
        s += 1
    return s


class _Counter:
    nodes = 0


def _dfs(t: int, rho: Fraction, lo: int, prefix: list[int], counter: _Counter) -> Iterator[tuple[int, ...]]:
    counter.nodes += 1
    if rho == 0:
        yield tuple(prefix)
        return
    if t == 0:
        return
    # 1/s^2 <= rho and t/s^2 >= rho
    start = max(lo, _ceil_sqrt(1 / rho))
    stop = isqrt((t * rho.denominator) // rho.numerator)
    for s in range(start, stop + 1):
        prefix.append(s)
        yield from _dfs(t - 1, rho - Fraction(1, s * s), s, prefix, counter)
        prefix.pop()


def enumerate_unit_sum_of_inverse_squares(max_terms: int, c: int = 1,
                                          _counter: _Counter | None = None) -> Iterator[tuple[int, ...]]:
    """All nondecreasing ``(s_1, ..., s_r)``, ``r <= max_terms``, with
    ``sum 1/s_i^2 = c``, in lexicographic order."""
    if not 1 <= max_terms <= MAX_TERMS:
        raise InvalidArgument(f"max_terms must be in 1..{MAX_TERMS}")
    if c < 1:
        raise InvalidArgument("c must be a positive integer")
    counter = _counter if _counter is not None else _Counter()
    for s in _dfs(max_terms, Fraction(c), 1, [], counter):
        if sum(Fraction(1, x * x) for x in s) != c:
            raise AssertionError(f"enumerator emitted {s} with the wrong sum")
        yield s


@dataclass(frozen=True)
class ModularTypeCandidate:
    rank: int
    c: int
    s: tuple[int, ...]

    @property
    def s_max(self) -> int:
        return max(self.s)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(sorted(self.s_max // x for x in self.s))

    @property
    def fpdim(self) -> int:
        return self.c * self.s_max ** 2

    def to_json(self) -> dict:
        return {"c": self.c, "dims": list(self.dims), "fpdim": str(self.fpdim), "rank": self.rank,
                "s": list(self.s)}


@dataclass
class SearchCertificate:
    max_rank: int
    c_range: tuple[int, int]
    filters: dict
    nodes: int = 0
    multisets: int = 0
    per_c: dict = field(default_factory=dict)
    rejected: dict = field(default_factory=dict)
    survivors: int = 0
    completed: bool = False

    def to_json(self) -> dict:
        return {
            "c_range": list(self.c_range),
            "completed": self.completed,
            "filters": dict(self.filters),
            "max_rank": self.max_rank,
            "multisets": self.multisets,
            "nodes": self.nodes,
            "per_c": {str(k): v for k, v in sorted(self.per_c.items())},
            "rejected": dict(sorted(self.rejected.items())),
            "status": self.status,
            "survivors": self.survivors,
        }

    @property
    def status(self) -> str:
        if not self.completed:
            return "incomplete"
        if self.survivors:
            return "candidates not excluded by these numerical constraints"
        return "no candidates"


def _reject_reason(s: tuple[int, ...], unique_unit: bool, npp: bool) -> str | None:
    top = max(s)
    if any(top % x for x in s):
        return "divisibility"
    dims = [top // x for x in s]
    if all(d == 1 for d in dims):
        return "pointed"
    if unique_unit and dims.count(1) != 1:
        return "unique_unit"
    if npp and any(d > 1 and is_prime_power(d) for d in dims):
        return "prime_power"
    return None


def search_nonpointed_simple_modular_types(max_rank: int = 11, unique_unit_filter: bool = True,
                                           npp_filter: bool = True
                                           ) -> tuple[list[ModularTypeCandidate], SearchCertificate]:
    """Candidates not excluded by the numerical constraints, and a certificate.

    Filters: ``s_i | s_max`` (always), not pointed (always), a unique
    invertible object (``unique_unit_filter``) and no nontrivial dimension a
    prime power (``npp_filter``).  Candidates are deduplicated by fusion type.
    """
    if not 2 <= max_rank <= MAX_TERMS:
        raise InvalidArgument(f"max_rank must be in 2..{MAX_TERMS}")
    cert = SearchCertificate(max_rank, (1, max_rank),
                             {"divisibility": True, "nonpointed": True, "prime_power": npp_filter,
                              "unique_unit": unique_unit_filter})
    found: dict[tuple[int, ...], ModularTypeCandidate] = {}
    for c in range(1, max_rank + 1):
        counter = _Counter()
        n = 0
        for s in enumerate_unit_sum_of_inverse_squares(max_rank, c, counter):
            n += 1
            why = _reject_reason(s, unique_unit_filter, npp_filter)
            if why is not None:
                cert.rejected[why] = cert.rejected.get(why, 0) + 1
                continue
            cand = ModularTypeCandidate(len(s), c, s)
            found.setdefault(cand.dims, cand)
        cert.nodes += counter.nodes
        cert.multisets += n
        cert.per_c[c] = n
    out = sorted(found.values(), key=lambda x: (x.rank, x.dims))
    cert.survivors = len(out)
    cert.completed = True
    return out, cert
