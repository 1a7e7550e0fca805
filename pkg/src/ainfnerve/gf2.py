"""Dense GF(2) linear algebra on int bitsets.

Vectors pack their coefficients into a single Python int (bit i = coefficient
of basis element i), so addition is XOR and equality/hashing are cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class Gf2Vector:
    length: int
    bits: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside the stated length")

    @staticmethod
    def zero(length: int) -> Gf2Vector:
        return Gf2Vector(length, 0)

    @staticmethod
    def basis(length: int, index: int) -> Gf2Vector:
        if not 0 <= index < length:
            raise IndexError("basis index out of range")
        return Gf2Vector(length, 1 << index)

    @staticmethod
    def from_coeffs(coeffs: Iterable[int]) -> Gf2Vector:
        bits = 0
        n = 0
        for c in coeffs:
            if c & 1:
                bits |= 1 << n
            n += 1
        return Gf2Vector(n, bits)

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError("coefficient index out of range")
        return (self.bits >> i) & 1

    def __add__(self, other: Gf2Vector) -> Gf2Vector:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return Gf2Vector(self.length, self.bits ^ other.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]

    def coeffs(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]


def add(v: Gf2Vector, w: Gf2Vector) -> Gf2Vector:
    """Coefficientwise XOR of two equal-length vectors."""
    return v + w


@dataclass(frozen=True)
class Gf2Matrix:
    """Row-major matrix; row i is an int bitset of width cols."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        for r in self.data:
            if r < 0 or r >> self.cols:
                raise ValueError("row wider than the stated column count")

    @staticmethod
    def from_rows(rows: Iterable[Gf2Vector]) -> Gf2Matrix:
        rows = list(rows)
        if not rows:
            return Gf2Matrix(0, 0, ())
        cols = rows[0].length
        if any(r.length != cols for r in rows):
            raise ValueError("rows of unequal length")
        return Gf2Matrix(len(rows), cols, tuple(r.bits for r in rows))

    @staticmethod
    def from_columns(cols: Iterable[Gf2Vector], height: Optional[int] = None) -> Gf2Matrix:
        cols = list(cols)
        if not cols:
            return Gf2Matrix(height or 0, 0, tuple([0] * (height or 0)))
        h = cols[0].length
        if any(c.length != h for c in cols):
            raise ValueError("columns of unequal length")
        data = []
        for i in range(h):
            row = 0
            for j, c in enumerate(cols):
                if (c.bits >> i) & 1:
                    row |= 1 << j
            data.append(row)
        return Gf2Matrix(h, len(cols), tuple(data))

    @staticmethod
    def zero(rows: int, cols: int) -> Gf2Matrix:
        return Gf2Matrix(rows, cols, tuple([0] * rows))

    @staticmethod
    def identity(n: int) -> Gf2Matrix:
        return Gf2Matrix(n, n, tuple(1 << i for i in range(n)))

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.cols, self.data[i])

    def apply(self, v: Gf2Vector) -> Gf2Vector:
        """Matrix-vector product A*v (v indexed by columns)."""
        if v.length != self.cols:
            raise ValueError("dimension mismatch")
        bits = 0
        for i, row in enumerate(self.data):
            if bin(row & v.bits).count("1") & 1:
                bits |= 1 << i
        return Gf2Vector(self.rows, bits)

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1


def _eliminate(rows: list[int], cols: int) -> tuple[list[int], list[int]]:
    """In-place style RREF; returns (reduced rows, pivot column list).

    Pivoting is deterministic: leftmost column first, lowest row first.
    """
    work = rows[:]
    pivots: list[int] = []
    pivot_row = 0
    for col in range(cols):
        found = -1
        for r in range(pivot_row, len(work)):
            if (work[r] >> col) & 1:
                found = r
                break
        if found == -1:
            continue
        work[pivot_row], work[found] = work[found], work[pivot_row]
        for r in range(len(work)):
            if r != pivot_row and ((work[r] >> col) & 1):
                work[r] ^= work[pivot_row]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(work):
            break
    return work, pivots


def rank(a: Gf2Matrix) -> int:
    _, pivots = _eliminate(list(a.data), a.cols)
    return len(pivots)


def solve_affine(
    a: Gf2Matrix, b: Gf2Vector
) -> Optional[tuple[Gf2Vector, list[Gf2Vector]]]:
    """Solve A*x = b over GF(2).

    Returns (particular, kernel_basis) so that the full solution set is
    particular + span(kernel_basis), or None when the system is inconsistent.
    """
    if a.rows != b.length:
        raise ValueError("dimension mismatch between matrix and vector")
    n = a.cols
    # Augment with b as an extra column on the left of nothing: use col n.
    aug = [a.data[i] | (((b.bits >> i) & 1) << n) for i in range(a.rows)]
    work, pivots = _eliminate(aug, n)
    # Inconsistent iff some reduced row is 0 = 1.
    for row in work:
        if row >> n and not (row & ((1 << n) - 1)):
            return None
    particular = 0
    for r, col in enumerate(pivots):
        if (work[r] >> n) & 1:
            particular |= 1 << col
    pivot_set = set(pivots)
    kernel: list[Gf2Vector] = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = 1 << free
        for r, col in enumerate(pivots):
            if (work[r] >> free) & 1:
                vec |= 1 << col
        kernel.append(Gf2Vector(n, vec))
    return Gf2Vector(n, particular), kernel


class Subspace:
    """Row space kept in reduced echelon form; supports canonical reduction."""

    def __init__(self, length: int, vectors: Iterable[Gf2Vector] = ()) -> None:
        self.length = length
        self._rows: list[int] = []  # reduced echelon, sorted by pivot
        self._pivots: list[int] = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, v: Gf2Vector) -> Gf2Vector:
        """Canonical representative of v modulo the subspace."""
        if v.length != self.length:
            raise ValueError("length mismatch")
        bits = v.bits
        for row, piv in zip(self._rows, self._pivots):
            if (bits >> piv) & 1:
                bits ^= row
        return Gf2Vector(self.length, bits)

    def contains(self, v: Gf2Vector) -> bool:
        return self.reduce(v).is_zero()

    def add(self, v: Gf2Vector) -> bool:
        """Insert v; returns True when the dimension grew."""
        red = self.reduce(v).bits
        if red == 0:
            return False
        piv = red.bit_length() - 1
        # Keep earlier rows reduced against the new one.
        for i in range(len(self._rows)):
            if (self._rows[i] >> piv) & 1:
                self._rows[i] ^= red
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] > piv:
            pos += 1
        self._rows.insert(pos, red)
        self._pivots.insert(pos, piv)
        return True

    def basis(self) -> list[Gf2Vector]:
        return [Gf2Vector(self.length, r) for r in self._rows]

    def enumerate(self) -> list[Gf2Vector]:
        """All 2^dim elements, deterministic order."""
        out = [Gf2Vector(self.length, 0)]
        for row in self._rows:
            out = out + [Gf2Vector(self.length, v.bits ^ row) for v in out]
        return out
