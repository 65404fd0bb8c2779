"""Bit-packed linear algebra over GF(2) and polynomial matrices over GF(2)[z].

Vectors and matrix rows are stored as Python ints with coordinate 0 in the
least significant bit, so Hamming weights are popcounts and row operations
are single XORs.  Polynomials over GF(2) are ints as well, with the
coefficient of z^i at bit i; the int 0 is the zero polynomial, which keeps
it distinct from the constant polynomial 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class BitVec:
    """Binary vector of fixed length n; coordinate i lives at bit i."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("set bits beyond declared length")

    @classmethod
    def from_bits(cls, coords: Iterable[int]) -> "BitVec":
        bits = 0
        length = 0
        for i, b in enumerate(coords):
            if b not in (0, 1):
                raise ValueError(f"non-binary coordinate {b!r}")
            bits |= b << i
            length = i + 1
        return cls(length, bits)

    @classmethod
    def from_string(cls, s: str) -> "BitVec":
        """Parse a 0/1 string; the leftmost character is coordinate 0."""
        return cls.from_bits(int(ch) for ch in s)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __len__(self) -> int:
        return self.n

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVec(self.n, self.bits ^ other.bits)

    def __and__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVec(self.n, self.bits & other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_string(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.n))

    def __repr__(self) -> str:
        return f"BitVec({self.to_string()!r})"


def weight(v: BitVec) -> int:
    """Number of set coordinates of v."""
    return v.weight()


@dataclass(frozen=True)
class BitMatrix:
    """Dense matrix over GF(2); each row packed into an int (col j at bit j)."""

    cols: int
    row_bits: tuple

    def __post_init__(self):
        if self.cols < 0:
            raise ValueError("negative column count")
        for r in self.row_bits:
            if r < 0 or r >> self.cols:
                raise ValueError("row has set bits beyond declared width")
        object.__setattr__(self, "row_bits", tuple(self.row_bits))

    @property
    def rows(self) -> int:
        return len(self.row_bits)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("empty matrix")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(cols, tuple(BitVec.from_bits(r).bits for r in rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        return cls.from_rows([[int(ch) for ch in r] for r in rows])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(cols, (0,) * rows)

    def row(self, i: int) -> BitVec:
        return BitVec(self.cols, self.row_bits[i])

    def column(self, j: int) -> BitVec:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        bits = 0
        for i, r in enumerate(self.row_bits):
            bits |= ((r >> j) & 1) << i
        return BitVec(self.rows, bits)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def entry(self, i: int, j: int) -> int:
        return (self.row_bits[i] >> j) & 1

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.row_bits)

    def row_strings(self):
        return [self.row(i).to_string() for i in range(self.rows)]

    def permute_columns(self, perm: Sequence[int]) -> "BitMatrix":
        """New matrix whose column j is the old column perm[j]."""
        if sorted(perm) != list(range(self.cols)):
            raise ValueError("not a permutation")
        new_rows = []
        for r in self.row_bits:
            bits = 0
            for j, src in enumerate(perm):
                bits |= ((r >> src) & 1) << j
            new_rows.append(bits)
        return BitMatrix(self.cols, tuple(new_rows))

    def __repr__(self) -> str:
        return f"BitMatrix({self.row_strings()})"


def vec_mat_mul(u: BitVec, m: BitMatrix) -> BitVec:
    """GF(2) product u*M: XOR of the rows of M selected by u."""
    if u.n != m.rows:
        raise ValueError(f"length {u.n} does not match {m.rows} rows")
    acc = 0
    bits = u.bits
    while bits:
        i = (bits & -bits).bit_length() - 1
        acc ^= m.row_bits[i]
        bits &= bits - 1
    return BitVec(m.cols, acc)


def rank(m: BitMatrix) -> int:
    """Row rank over GF(2) via Gaussian elimination on packed rows."""
    work = [r for r in m.row_bits if r]
    rnk = 0
    while work:
        pivot = work.pop()
        low = pivot & -pivot
        rnk += 1
        work = [r ^ pivot if r & low else r for r in work]
        work = [r for r in work if r]
    return rnk


def hstack(ms: Sequence[BitMatrix]) -> BitMatrix:
    """Concatenate matrices left to right."""
    if not ms:
        raise ValueError("nothing to stack")
    nrows = ms[0].rows
    if any(m.rows != nrows for m in ms):
        raise ValueError("row count mismatch")
    rows = [0] * nrows
    shift = 0
    for m in ms:
        for i in range(nrows):
            rows[i] |= m.row_bits[i] << shift
        shift += m.cols
    return BitMatrix(shift, tuple(rows))


def vstack(ms: Sequence[BitMatrix]) -> BitMatrix:
    """Concatenate matrices top to bottom."""
    if not ms:
        raise ValueError("nothing to stack")
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ValueError("column count mismatch")
    rows = []
    for m in ms:
        rows.extend(m.row_bits)
    return BitMatrix(cols, tuple(rows))


# ---------------------------------------------------------------------------
# Polynomials over GF(2)


@dataclass(frozen=True)
class Poly2:
    """Polynomial over GF(2); bit i of `bits` is the coefficient of z^i."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("negative coefficient mask")

    @property
    def degree(self) -> Optional[int]:
        """Degree, or None for the zero polynomial."""
        return self.bits.bit_length() - 1 if self.bits else None

    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: "Poly2") -> "Poly2":
        return Poly2(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Poly2") -> "Poly2":
        a, b, acc = self.bits, other.bits, 0
        while a:
            if a & 1:
                acc ^= b
            a >>= 1
            b <<= 1
        return Poly2(acc)

    def __divmod__(self, other: "Poly2"):
        if other.bits == 0:
            raise ZeroDivisionError("polynomial division by zero")
        rem = self.bits
        q = 0
        dlen = other.bits.bit_length()
        while rem.bit_length() >= dlen:
            shift = rem.bit_length() - dlen
            rem ^= other.bits << shift
            q |= 1 << shift
        return Poly2(q), Poly2(rem)

    def __mod__(self, other: "Poly2") -> "Poly2":
        return divmod(self, other)[1]

    def __repr__(self) -> str:
        if self.bits == 0:
            return "Poly2(0)"
        terms = []
        for i in range(self.bits.bit_length() - 1, -1, -1):
            if (self.bits >> i) & 1:
                terms.append("1" if i == 0 else ("z" if i == 1 else f"z^{i}"))
        return f"Poly2({'+'.join(terms)})"


POLY_ZERO = Poly2(0)
POLY_ONE = Poly2(1)


def poly_gcd(a: Poly2, b: Poly2) -> Poly2:
    """Monic gcd over GF(2)[z] (every nonzero GF(2) polynomial is monic)."""
    if a.bits == 0 and b.bits == 0:
        raise ValueError("gcd(0, 0) is undefined")
    x, y = a.bits, b.bits
    while y:
        q = Poly2(x) % Poly2(y)
        x, y = y, q.bits
    return Poly2(x)


@dataclass(frozen=True)
class PolyMatrix:
    """Matrix over GF(2)[z]; interconvertible with a coefficient list of BitMatrix."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(
            len(r) != self.cols for r in self.entries
        ):
            raise ValueError("entry grid does not match declared shape")
        object.__setattr__(
            self, "entries", tuple(tuple(row) for row in self.entries)
        )

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[BitMatrix]) -> "PolyMatrix":
        """Build G(z) = sum_i coeffs[i] * z^i."""
        if not coeffs:
            raise ValueError("empty coefficient list")
        rows, cols = coeffs[0].rows, coeffs[0].cols
        if any(c.rows != rows or c.cols != cols for c in coeffs):
            raise ValueError("coefficient shape mismatch")
        grid = []
        for r in range(rows):
            row = []
            for c in range(cols):
                bits = 0
                for i, g in enumerate(coeffs):
                    bits |= g.entry(r, c) << i
                row.append(Poly2(bits))
            grid.append(tuple(row))
        return cls(rows, cols, tuple(grid))

    def to_coeffs(self):
        """Coefficient list G_0..G_mu with G_mu != 0; mu is the max entry degree."""
        mu = self.max_degree()
        if mu is None:
            raise ValueError("zero polynomial matrix has no coefficient list")
        out = []
        for i in range(mu + 1):
            rows = tuple(
                BitVec.from_bits(
                    (e.bits >> i) & 1 for e in self.entries[r]
                ).bits
                for r in range(self.rows)
            )
            out.append(BitMatrix(self.cols, rows))
        return out

    def entry(self, r: int, c: int) -> Poly2:
        return self.entries[r][c]

    def max_degree(self) -> Optional[int]:
        degs = [e.degree for row in self.entries for e in row if e.bits]
        return max(degs) if degs else None


def _poly_det(grid) -> Poly2:
    """Determinant over GF(2)[z] by Laplace expansion (small matrices only)."""
    n = len(grid)
    if n == 1:
        return grid[0][0]
    acc = POLY_ZERO
    rest = grid[1:]
    for j in range(n):
        if grid[0][j].bits == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rest]
        acc = acc + grid[0][j] * _poly_det(minor)
    return acc


def k_minors(g: PolyMatrix):
    """All k x k minors of a k x n polynomial matrix, one per column subset.

    Column subsets are taken in lexicographic order.  Signs are irrelevant
    over GF(2).
    """
    if g.rows > g.cols:
        raise ValueError("need rows <= cols")
    minors = []
    for cols in itertools.combinations(range(g.cols), g.rows):
        grid = [[g.entries[r][c] for c in cols] for r in range(g.rows)]
        minors.append(_poly_det(grid))
    return minors
