# linalg/sparse.py

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = Dict[int, Fraction]

__all__ = [
    "SparseMatrix", "Vector", "rank", "nullspace", "solve", "invert", "Echelon",
]


@dataclass(frozen=True)
class SparseMatrix:
    """
    Exact rational matrix stored as a map (row, col) -> nonzero Fraction.

    The matrix acts on column vectors: column j is the image of basis vector j.
    """
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"Invalid shape {self.rows}x{self.cols}")
        clean = {}
        for (i, j), value in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"Entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
            value = Fraction(value)
            if value:
                clean[(i, j)] = value
        object.__setattr__(self, "entries", clean)

    # --- constructors ---

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "SparseMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = {}
        for i, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError("Ragged dense matrix")
            for j, value in enumerate(row):
                if value:
                    entries[(i, j)] = Fraction(value)
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "SparseMatrix":
        entries = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                if value:
                    entries[(i, j)] = entries.get((i, j), Fraction(0)) + Fraction(value)
        return cls(rows, len(columns), entries)

    # --- views ---

    @cached_property
    def _by_column(self) -> Dict[int, Vector]:
        out: Dict[int, Vector] = defaultdict(dict)
        for (i, j), value in self.entries.items():
            out[j][i] = value
        return dict(out)

    @cached_property
    def _by_row(self) -> Dict[int, Vector]:
        out: Dict[int, Vector] = defaultdict(dict)
        for (i, j), value in self.entries.items():
            out[i][j] = value
        return dict(out)

    def column(self, j: int) -> Vector:
        return dict(self._by_column.get(j, {}))

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def row(self, i: int) -> Vector:
        return dict(self._by_row.get(i, {}))

    def to_dense(self) -> List[List[Fraction]]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), value in self.entries.items():
            dense[i][j] = value
        return dense

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    # --- arithmetic ---

    def apply(self, vector: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for j, coefficient in vector.items():
            if not coefficient:
                continue
            for i, value in self._by_column.get(j, {}).items():
                out[i] = out.get(i, Fraction(0)) + value * coefficient
        return {i: v for i, v in out.items() if v}

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot compose {self.shape} with {other.shape}")
        entries: Dict[Tuple[int, int], Fraction] = {}
        left = self._by_column
        for (k, j), b in other.entries.items():
            for i, a in left.get(k, {}).items():
                entries[(i, j)] = entries.get((i, j), Fraction(0)) + a * b
        return SparseMatrix(self.rows, other.cols, entries)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"Cannot add {self.shape} and {other.shape}")
        entries = dict(self.entries)
        for key, value in other.entries.items():
            entries[key] = entries.get(key, Fraction(0)) + value
        return SparseMatrix(self.rows, self.cols, entries)

    def scale(self, factor) -> "SparseMatrix":
        factor = Fraction(factor)
        return SparseMatrix(self.rows, self.cols, {k: v * factor for k, v in self.entries.items()})

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def permute(self, row_perm: Optional[Sequence[int]] = None, col_perm: Optional[Sequence[int]] = None) -> "SparseMatrix":
        """Moves row i to row_perm[i] and column j to col_perm[j]."""
        entries = {}
        for (i, j), value in self.entries.items():
            ni = row_perm[i] if row_perm is not None else i
            nj = col_perm[j] if col_perm is not None else j
            entries[(ni, nj)] = value
        return SparseMatrix(self.rows, self.cols, entries)


# --- fraction-free elimination ---

def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    content = 0
    for value in row.values():
        content = gcd(content, value)
    if content > 1:
        return {j: v // content for j, v in row.items()}
    return row


def _integer_rows(m: SparseMatrix) -> List[Dict[int, int]]:
    rows = []
    for i in range(m.rows):
        row = m.row(i)
        if not row:
            continue
        scale = 1
        for value in row.values():
            scale = lcm(scale, value.denominator)
        rows.append(_primitive({j: int(v * scale) for j, v in row.items()}))
    return rows


def rank(m: SparseMatrix, pivot_order: str = "forward") -> int:
    """
    Exact rank over Q by fraction-free sparse elimination.

    pivot_order "forward" processes rows top-down pivoting on the smallest
    column; "reverse" processes rows bottom-up pivoting on the largest column.
    """
    if pivot_order == "forward":
        rows, lead = _integer_rows(m), min
    elif pivot_order == "reverse":
        rows, lead = list(reversed(_integer_rows(m))), max
    else:
        raise ValueError(f"Unknown pivot order '{pivot_order}'")

    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        while row:
            c = lead(row)
            pivot = pivots.get(c)
            if pivot is None:
                pivots[c] = row
                break
            a, b = pivot[c], row[c]
            g = gcd(a, b)
            pa, rb = a // g, b // g
            reduced = {}
            for j in set(row) | set(pivot):
                value = row.get(j, 0) * pa - pivot.get(j, 0) * rb
                if value:
                    reduced[j] = value
            row = _primitive(reduced)
    return len(pivots)


# --- rational echelon forms (small dense work: kernels, solving) ---

class Echelon:
    """Incrementally maintained reduced basis of a subspace of Q^n."""

    def __init__(self):
        self._rows: Dict[int, Vector] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Mapping[int, Fraction]) -> Vector:
        v = {j: Fraction(x) for j, x in vector.items() if x}
        for c in sorted(self._rows):
            if c in v:
                factor = v[c]
                for j, x in self._rows[c].items():
                    value = v.get(j, Fraction(0)) - factor * x
                    if value:
                        v[j] = value
                    else:
                        v.pop(j, None)
        return v

    def add(self, vector: Mapping[int, Fraction]) -> bool:
        """Adds a vector; returns False when it already lies in the span."""
        v = self.reduce(vector)
        if not v:
            return False
        c = min(v)
        lead = v[c]
        v = {j: x / lead for j, x in v.items()}
        for other_c, other in self._rows.items():
            if c in other:
                factor = other[c]
                for j, x in v.items():
                    value = other.get(j, Fraction(0)) - factor * x
                    if value:
                        other[j] = value
                    else:
                        other.pop(j, None)
        self._rows[c] = v
        return True

    def contains(self, vector: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vector)


def _qq_rows(dense: Sequence[Sequence]) -> List[list]:
    return [[QQ(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in dense]


def _fractions(m: DomainMatrix) -> List[List[Fraction]]:
    return [[Fraction(int(v.numerator), int(v.denominator)) for v in row] for row in m.to_list()]


def _rref(dense: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form and pivot columns, via sympy's DomainMatrix over QQ."""
    if not dense or ncols == 0:
        return [list(r) for r in dense], []
    reduced, pivots = DomainMatrix(_qq_rows(dense), (len(dense), ncols), QQ).rref()
    return _fractions(reduced), list(pivots)


def nullspace(m: SparseMatrix) -> List[Vector]:
    """Basis of the kernel of m, one vector per free column, in column order."""
    dense, pivots = _rref(m.to_dense(), m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v: Vector = {free: Fraction(1)}
        for r, p in enumerate(pivots):
            if dense[r][free]:
                v[p] = -dense[r][free]
        basis.append(v)
    return basis


def solve(columns: Sequence[Mapping[int, Fraction]], target: Mapping[int, Fraction], dim: int) -> Optional[List[Fraction]]:
    """Returns coefficients x with sum_j x_j columns[j] = target, or None when unsolvable."""
    n = len(columns)
    dense = [[Fraction(0)] * (n + 1) for _ in range(dim)]
    for j, column in enumerate(columns):
        for i, value in column.items():
            dense[i][j] = Fraction(value)
    for i, value in target.items():
        dense[i][n] = Fraction(value)
    rows, pivots = _rref(dense, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = rows[r][n]
    return x


def invert(dense: Sequence[Sequence]) -> List[List[Fraction]]:
    """Exact inverse of a square matrix; raises ValueError when singular."""
    n = len(dense)
    if any(len(row) != n for row in dense):
        raise ValueError("Only square matrices can be inverted")
    if n == 0:
        return []
    m = DomainMatrix(_qq_rows(dense), (n, n), QQ)
    if m.rank() < n:
        raise ValueError("Matrix is singular")
    return _fractions(m.inv())
