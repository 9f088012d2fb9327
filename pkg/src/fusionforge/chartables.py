"""Interpolated generic character tables (eigentables).

Rows are characters and columns are classes, both stored in the block order of
the printed tables.  For ``q`` even the blocks are::

    rows:    x_{1,1} | x_{q-1,c}, c<=q/2 | x_{q,1} | x_{q+1,c}, c<=(q-2)/2
    columns: {1} | size q^2-1 | zeta_{q-1} family, size q(q+1)
                 | zeta_{q+1} family, size q(q-1)

and analogously for ``q = 3 mod 4``, ``q = 1 mod 4`` and Etingof's tables.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InconsistentTableError, InvalidArgument
from .exactnum import CyclotomicNumber, rational, root_of_unity, sqrt_integer

# row families
TRIVIAL = "trivial"
HALF = "half"          # x_{(q-1)/2,c} or x_{(q+1)/2,c}
QM1 = "q-1"
Q = "q"
QP1 = "q+1"
LINEAR = "linear"      # Etingof x_{1,c}
BIG = "big"            # Etingof x_{q-1,1}
CUSTOM = "custom"

_ROW_FAMILIES = (TRIVIAL, HALF, QM1, Q, QP1, LINEAR, BIG, CUSTOM)


@dataclass(frozen=True)
class RowLabel:
    degree: int
    charparam: int
    family: str

    def __str__(self) -> str:
        return f"x_{{{self.degree},{self.charparam}}}"

    def to_json(self) -> dict:
        return {"charparam": self.charparam, "degree": self.degree, "family": self.family}

    @classmethod
    def from_json(cls, d) -> RowLabel:
        try:
            fam = str(d.get("family", CUSTOM))
            return cls(int(d["degree"]), int(d["charparam"]), fam)
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InvalidArgument(f"malformed row label {d!r}") from exc


def _cyc(x) -> CyclotomicNumber:
    return x if isinstance(x, CyclotomicNumber) else rational(x)


class Eigentable:
    """An eigentable ``lambda[i][j]`` with class sizes and formal codegrees.

    The constructor checks every structural invariant and raises
    :class:`InconsistentTableError` on the first violation.  Codegrees are
    computed as ``sum_i |lambda_ij|^2`` and must equal
    ``fpdim_total / class_size``.
    """

    def __init__(self, entries: Sequence[Sequence], row_labels: Sequence[RowLabel],
                 class_sizes: Sequence[int], family: str = CUSTOM, q: int | None = None,
                 check: bool = True):
        self.entries = tuple(tuple(_cyc(x) for x in row) for row in entries)
        self.rank = len(self.entries)
        self.row_labels = tuple(row_labels)
        self.class_sizes = tuple(int(s) for s in class_sizes)
        self.family = family
        self.q = q
        self.fpdim_total = sum(self.class_sizes)
        r = self.rank
        if r == 0:
            raise InconsistentTableError("empty table")
        if any(len(row) != r for row in self.entries):
            raise InconsistentTableError("table is not square")
        if len(self.row_labels) != r or len(self.class_sizes) != r:
            raise InconsistentTableError("labels or class sizes do not match the rank")
        if any(s <= 0 for s in self.class_sizes):
            raise InconsistentTableError("class sizes must be positive")
        self.codegrees = tuple(Fraction(self.fpdim_total, s) for s in self.class_sizes)
        if check:
            self._check()
        self.codegrees = tuple(int(c) if c.denominator == 1 else c for c in self.codegrees)

    def _check(self) -> None:
        r = self.rank
        keys = {(l.family, l.degree, l.charparam) for l in self.row_labels}
        if len(keys) != r:
            raise InconsistentTableError("row labels are not unique")
        for i in range(r):
            d = self.entries[i][0].as_rational()
            if d is None or d.denominator != 1 or d <= 0:
                raise InconsistentTableError(f"row {i}: first column is not a positive integer")
            if d != self.row_labels[i].degree:
                raise InconsistentTableError(f"row {i}: degree label {self.row_labels[i].degree} != {d}")
        if any(x != 1 for x in self.entries[0]):
            raise InconsistentTableError("row 0 is not identically 1")
        if self.class_sizes[0] != 1:
            raise InconsistentTableError("the identity column must have class size 1")
        for j in range(r):
            norm = column_norm(self, j)
            if norm != self.codegrees[j]:
                raise InconsistentTableError(
                    f"column {j}: sum |lambda|^2 = {norm} but FPdim/class size = {self.codegrees[j]}")

    # -- helpers -------------------------------------------------------
    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(row[0].as_rational()) for row in self.entries)

    def column(self, j: int) -> tuple[CyclotomicNumber, ...]:
        return tuple(row[j] for row in self.entries)

    def column_groups(self) -> list[list[int]]:
        """Columns grouped by codegree, in order of first appearance.

        For the tables built here each group is one class family, whose
        members are Galois conjugate, so sums over a group are rational.
        """
        groups: dict = {}
        for j, c in enumerate(self.codegrees):
            groups.setdefault(c, []).append(j)
        return list(groups.values())

    def with_entry(self, i: int, j: int, value) -> Eigentable:
        """Copy with one entry replaced and no invariant checks (for tests)."""
        rows = [list(row) for row in self.entries]
        rows[i][j] = _cyc(value)
        return Eigentable(rows, self.row_labels, self.class_sizes, self.family, self.q, check=False)

    def to_json(self) -> dict:
        return {
            "class_sizes": [str(s) for s in self.class_sizes],
            "codegrees": [str(c) for c in self.codegrees],
            "entries": [[x.to_json() for x in row] for row in self.entries],
            "family": self.family,
            "q": self.q,
            "rank": self.rank,
            "row_labels": [l.to_json() for l in self.row_labels],
        }

    @classmethod
    def from_json(cls, data: dict) -> Eigentable:
        try:
            entries = [[CyclotomicNumber.from_json(x) for x in row] for row in data["entries"]]
            labels = [RowLabel.from_json(l) for l in data["row_labels"]]
            sizes = [int(s) for s in data["class_sizes"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed eigentable JSON: {exc}") from exc
        q = data.get("q")
        return cls(entries, labels, sizes, data.get("family", CUSTOM), None if q is None else int(q))

    def format_grid(self) -> str:
        head = ["", *(str(s) for s in self.class_sizes)]
        rows = [[str(self.row_labels[i]), *(x.to_gap() for x in self.entries[i])] for i in range(self.rank)]
        table = [head, *rows]
        widths = [max(len(row[k]) for row in table) for k in range(len(head))]
        lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in table]
        lines.insert(1, "-" * len(lines[0]))
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"Eigentable(family={self.family!r}, q={self.q}, rank={self.rank})"


def column_norm(t: Eigentable, j: int) -> Fraction | CyclotomicNumber:
    total = rational(0)
    for row in t.entries:
        x = row[j]
        total = total + x * x.conjugate()
    r = total.as_rational()
    return total if r is None else r


def family_sum(t: Eigentable, values: Sequence[CyclotomicNumber]) -> CyclotomicNumber:
    """``sum_s values[s] / c_s`` summed group by group.

    Each group's partial sum lives in one small cyclotomic field; it is
    collapsed to a rational when possible before the groups are added, so the
    large lcm field is only entered when a partial sum is irrational.
    """
    total = Fraction(0)
    rest = rational(0)
    for group in t.column_groups():
        c = t.codegrees[group[0]]
        part = rational(0)
        for s in group:
            part = part + values[s]
        r = part.as_rational()
        if r is not None:
            total += r / c
        else:
            rest = rest + part * (1 / Fraction(c))
    return rest + total


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise InvalidArgument(f"q must be an integer >= 2, got {q!r}")


def _zc(n: int, e: int) -> CyclotomicNumber:
    return root_of_unity(n, e) + root_of_unity(n, -e)


def build_psl2_table(q: int) -> Eigentable:
    """Interpolated generic character table of PSL(2, q) for any integer q >= 2."""
    _check_q(q)
    if q % 2 == 0:
        return _table_even(q)
    if q % 4 == 3:
        return _table_3mod4(q)
    return _table_1mod4(q)


def _assemble(q, rows, cols, labels):
    """rows: list of (label, f) with f(col) -> entry; cols: list of (size, col)."""
    entries = [[f(col) for _, col in cols] for f in rows]
    return Eigentable(entries, labels, [size for size, _ in cols], "psl2", q)


def _table_even(q: int) -> Eigentable:
    one = rational(1)
    cols = [(1, ("id",)), (q * q - 1, ("u",))]
    cols += [(q * (q + 1), ("a", k)) for k in range(1, (q - 2) // 2 + 1)]
    cols += [(q * (q - 1), ("b", k)) for k in range(1, q // 2 + 1)]

    def triv(col):
        return one

    def qm1(c):
        def f(col):
            kind = col[0]
            if kind == "id":
                return rational(q - 1)
            if kind == "u":
                return rational(-1)
            if kind == "a":
                return rational(0)
            return -_zc(q + 1, col[1] * c)
        return f

    def steinberg(col):
        return {"id": rational(q), "u": rational(0), "a": one, "b": rational(-1)}[col[0]]

    def qp1(c):
        def f(col):
            kind = col[0]
            if kind == "id":
                return rational(q + 1)
            if kind == "u":
                return one
            if kind == "a":
                return _zc(q - 1, col[1] * c)
            return rational(0)
        return f

    rows = [triv]
    labels = [RowLabel(1, 1, TRIVIAL)]
    for c in range(1, q // 2 + 1):
        rows.append(qm1(c))
        labels.append(RowLabel(q - 1, c, QM1))
    rows.append(steinberg)
    labels.append(RowLabel(q, 1, Q))
    for c in range(1, (q - 2) // 2 + 1):
        rows.append(qp1(c))
        labels.append(RowLabel(q + 1, c, QP1))
    return _assemble(q, rows, [(s, col) for s, col in cols], labels)


def _table_3mod4(q: int) -> Eigentable:
    one = rational(1)
    m = (q - 3) // 4
    k0 = (q + 1) // 4
    isq = root_of_unity(4, 1) * sqrt_integer(q)
    cols = [(1, ("id",))]
    cols += [((q * q - 1) // 2, ("p", k)) for k in (1, 2)]
    cols += [(q * (q + 1), ("a", k)) for k in range(1, m + 1)]
    cols += [(q * (q - 1), ("b", k)) for k in range(1, m + 1)]
    cols += [(q * (q - 1) // 2, ("l", k0))]

    def sign(e):
        return 1 if e % 2 == 0 else -1

    def half(c):
        def f(col):
            kind = col[0]
            if kind == "id":
                return rational((q - 1) // 2)
            if kind == "p":
                return (rational(-1) + isq * sign(col[1] + c)) / 2
            if kind == "a":
                return rational(0)
            return rational(sign(col[1] + 1))
        return f

    def qm1(c):
        def f(col):
            kind = col[0]
            if kind == "id":
                return rational(q - 1)
            if kind == "p":
                return rational(-1)
            if kind == "a":
                return rational(0)
            if kind == "b":
                return -_zc(q + 1, 2 * col[1] * c)
            return rational(-2 * sign(c))
        return f

    def steinberg(col):
        return {"id": rational(q), "p": rational(0), "a": one, "b": rational(-1), "l": rational(-1)}[col[0]]

    def qp1(c):
        def f(col):
            kind = col[0]
            if kind == "id":
                return rational(q + 1)
            if kind == "p":
                return one
            if kind == "a":
                return _zc(q - 1, 2 * col[1] * c)
            return rational(0)
        return f

    rows = [lambda col: one]
    labels = [RowLabel(1, 1, TRIVIAL)]
    for c in (1, 2):
        rows.append(half(c))
        labels.append(RowLabel((q - 1) // 2, c, HALF))
    for c in range(1, m + 1):
        rows.append(qm1(c))
        labels.append(RowLabel(q - 1, c, QM1))
    rows.append(steinberg)
    labels.append(RowLabel(q, 1, Q))
    for c in range(1, m + 1):
        rows.append(qp1(c))
        labels.append(RowLabel(q + 1, c, QP1))
    return _assemble(q, rows, cols, labels)


def _table_1mod4(q: int) -> Eigentable:
    one = rational(1)
    m_minus = (q - 1) // 4
    m_plus = (q - 5) // 4
    k0 = (q - 1) // 4
    sq = sqrt_integer(q)
    cols = [(1, ("id",))]
    cols += [((q * q - 1) // 2, ("p", k)) for k in (1, 2)]
    cols += [(q * (q + 1), ("a", k)) for k in range(1, m_plus + 1)]
    cols += [(q * (q + 1) // 2, ("l", k0))]
    cols += [(q * (q - 1), ("b", k)) for k in range(1, m_minus + 1)]

    def sign(e):
        return 1 if e % 2 == 0 else -1

    def half(c):
        def f(col):
            kind = col[0]
            if kind == "id":
                return rational((q + 1) // 2)
            if kind == "p":
                return (one + sq * sign(col[1] + c)) / 2
            if kind in ("a", "l"):
                return rational(sign(col[1]))
            return rational(0)
        return f

    def qm1(c):
        def f(col):
            kind = col[0]
            if kind == "id":
                return rational(q - 1)
            if kind == "p":
                return rational(-1)
            if kind in ("a", "l"):
                return rational(0)
            return -_zc(q + 1, 2 * col[1] * c)
        return f

    def steinberg(col):
        return {"id": rational(q), "p": rational(0), "a": one, "l": one, "b": rational(-1)}[col[0]]

    def qp1(c):
        def f(col):
            kind = col[0]
            if kind == "id":
                return rational(q + 1)
            if kind == "p":
                return one
            if kind == "a":
                return _zc(q - 1, 2 * col[1] * c)
            if kind == "l":
                return rational(2 * sign(c))
            return rational(0)
        return f

    rows = [lambda col: one]
    labels = [RowLabel(1, 1, TRIVIAL)]
    for c in (1, 2):
        rows.append(half(c))
        labels.append(RowLabel((q + 1) // 2, c, HALF))
    for c in range(1, m_minus + 1):
        rows.append(qm1(c))
        labels.append(RowLabel(q - 1, c, QM1))
    rows.append(steinberg)
    labels.append(RowLabel(q, 1, Q))
    for c in range(1, m_plus + 1):
        rows.append(qp1(c))
        labels.append(RowLabel(q + 1, c, QP1))
    return _assemble(q, rows, cols, labels)


def build_etingof_table(q: int) -> Eigentable:
    """Interpolated character table of F_q x| F_q^* (rank q)."""
    _check_q(q)
    sizes = [1] + [q] * (q - 2) + [q - 1]
    entries = []
    labels = []
    for c in range(q - 1):
        entries.append([rational(1)] + [root_of_unity(q - 1, k * c) for k in range(1, q - 1)] + [rational(1)])
        labels.append(RowLabel(1, c, LINEAR))
    entries.append([rational(q - 1)] + [rational(0)] * (q - 2) + [rational(-1)])
    labels.append(RowLabel(q - 1, 1, BIG))
    return Eigentable(entries, labels, sizes, "etingof", q)


def build_table(q: int, family: str) -> Eigentable:
    if family == "psl2":
        return build_psl2_table(q)
    if family == "etingof":
        return build_etingof_table(q)
    raise InvalidArgument(f"unknown family {family!r}")


# -- verification -----------------------------------------------------------

def verify_schur_orthogonality(t: Eigentable) -> bool:
    """Both orthogonality relations, exactly."""
    from ._familysum import pair_sums

    r = t.rank
    for j in range(r):
        for jj in range(j, r):
            total = rational(0)
            for row in t.entries:
                total = total + row[j] * row[jj].conjugate()
            expect = t.codegrees[j] if j == jj else 0
            if total != expect:
                return False
    gram = pair_sums(t)
    return all(gram[i][k] == (1 if i == k else 0) for i in range(r) for k in range(r))


@dataclass
class ReconstructionReport:
    orthonormal: bool
    duals_unique: bool
    unit_row: bool
    dual: tuple[int, ...] | None
    failures: list[str]

    @property
    def ok(self) -> bool:
        return self.orthonormal and self.duals_unique and self.unit_row


def find_duals(t: Eigentable) -> tuple[tuple[int, ...] | None, list[str]]:
    keys = {}
    for i, row in enumerate(t.entries):
        keys.setdefault(tuple(hash(x) for x in row), []).append(i)
    dual = []
    problems = []
    for i, row in enumerate(t.entries):
        conj = tuple(x.conjugate() for x in row)
        cands = [k for k in keys.get(tuple(hash(x) for x in conj), [])
                 if all(a == b for a, b in zip(t.entries[k], conj))]
        if len(cands) != 1:
            problems.append(f"row {i} has {len(cands)} conjugate rows")
            dual.append(-1)
        else:
            dual.append(cands[0])
    return (None if problems else tuple(dual)), problems


def verify_reconstruction_assumptions(t: Eigentable) -> ReconstructionReport:
    from ._familysum import pair_sums

    failures = []
    r = t.rank
    gram = pair_sums(t)
    bad = [(i, k) for i in range(r) for k in range(r) if gram[i][k] != (1 if i == k else 0)]
    if bad:
        i, k = bad[0]
        failures.append(f"(a) <row {i}, row {k}> = {gram[i][k]}")
    dual, problems = find_duals(t)
    failures += [f"(b) {p}" for p in problems]
    unit = all(x == 1 for x in t.entries[0])
    if not unit:
        failures.append("(c) row 0 is not identically 1")
    return ReconstructionReport(not bad, dual is not None, unit, dual, failures)


def verify_egyptian(t: Eigentable) -> bool:
    return sum((Fraction(1) / Fraction(c) for c in t.codegrees), Fraction(0)) == 1


def inner_product(t: Eigentable, f: Sequence, g: Sequence) -> CyclotomicNumber:
    """``<f, g> = sum_s f(s) conj(g(s)) / c_s``."""
    if len(f) != t.rank or len(g) != t.rank:
        raise InvalidArgument("vectors must have length rank")
    return family_sum(t, [_cyc(a) * _cyc(b).conjugate() for a, b in zip(f, g)])


def pointwise(*rows: Sequence) -> list[CyclotomicNumber]:
    out = [rational(1)] * len(rows[0])
    for row in rows:
        out = [a * _cyc(b) for a, b in zip(out, row)]
    return out

