"""Exact rational matrices and the subspace calculus over Q.

Scalars are :class:`fractions.Fraction`; nothing in this module ever touches a
float.  Row reduction is fraction-free: rows are scaled to integers, eliminated
by cross-multiplication with content (gcd) removal, and only normalised to
Fractions once the pivots are known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AmbientMismatch

Rational = Fraction

__all__ = [
    "Rational",
    "RatMatrix",
    "Subspace",
    "rref",
    "kernel_basis",
    "intersect",
    "sum",
    "orthogonal_complement",
    "codim",
    "contains",
    "to_rational",
]


def to_rational(value) -> Fraction:
    """Convert an int, Fraction or rational string like ``"-3/4"`` to a Fraction.

    Floats are refused so that no binary rounding can sneak into the data.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class RatMatrix:
    """Immutable dense matrix of Fractions stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: int | None = None) -> RatMatrix:
        data = [[to_rational(x) for x in row] for row in rows]
        if cols is None:
            if not data:
                raise ValueError("column count is required for a matrix with no rows")
            cols = len(data[0])
        for row in data:
            if len(row) != cols:
                raise ValueError(f"ragged matrix: expected rows of length {cols}")
        return cls(len(data), cols, tuple(x for row in data for x in row))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls.from_rows(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)], cols=n
        )

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> RatMatrix:
        return RatMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        ocols = [other.transpose().row(j) for j in range(other.cols)] if other.cols else []
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum_(a * b for a, b in zip(r, c) if a and b))
        return RatMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def sum_(values: Iterable[Fraction]) -> Fraction:
    total = Fraction(0)
    for v in values:
        total += v
    return total


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
        ints = [int(Fraction(x) * den) for x in row]
        if any(ints):
            out.append(ints)
    return out


def _reduce_content(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref_rows(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a list of rows, dropping zero rows.

    Returns the nonzero RREF rows and their pivot columns.
    """
    work = _integer_rows(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        p = next((i for i in range(r, len(work)) if work[i][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        prow = work[r]
        a = prow[c]
        for i, other in enumerate(work):
            if i == r:
                continue
            b = other[c]
            if b:
                work[i] = _reduce_content([a * x - b * y for x, y in zip(other, prow)])
        pivots.append(c)
        r += 1
    result = []
    for i, c in enumerate(pivots):
        piv = work[i][c]
        result.append([Fraction(x, piv) for x in work[i]])
    return result, pivots


def rref(m: RatMatrix) -> tuple[RatMatrix, int, list[int]]:
    """Return ``(R, rank, pivots)`` where ``R`` is the RREF of ``m``.

    ``R`` keeps the shape of ``m``; rows past ``rank`` are zero.
    """
    rows, pivots = rref_rows(m.to_rows(), m.cols)
    rank = len(rows)
    rows += [[Fraction(0)] * m.cols for _ in range(m.rows - rank)]
    return RatMatrix.from_rows(rows, cols=m.cols), rank, pivots


def rank(m: RatMatrix) -> int:
    return len(rref_rows(m.to_rows(), m.cols)[1])


def _null_vectors(rref_nonzero: list[list[Fraction]], pivots: list[int], ncols: int):
    pivset = set(pivots)
    vectors = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rref_nonzero, pivots):
            if row[f]:
                v[p] = -row[f]
        vectors.append(v)
    return vectors


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^l held by its canonical RREF basis.

    Equality and hashing go through the canonical basis, so two Subspace
    objects are equal exactly when they are the same subspace.
    """

    ambient_dim: int
    basis: RatMatrix

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        if self.basis.cols != self.ambient_dim:
            raise AmbientMismatch(
                f"basis has {self.basis.cols} columns, ambient dimension is {self.ambient_dim}"
            )

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
        rows, _ = rref_rows(vectors, ambient_dim)
        return cls(ambient_dim, RatMatrix.from_rows(rows, cols=ambient_dim))

    @classmethod
    def from_equations(cls, forms: Iterable[Sequence], ambient_dim: int) -> Subspace:
        """The joint kernel of the given linear forms."""
        forms = [list(f) for f in forms]
        for f in forms:
            if len(f) != ambient_dim:
                raise AmbientMismatch(f"linear form of length {len(f)} on Q^{ambient_dim}")
        return kernel_basis(RatMatrix.from_rows(forms, cols=ambient_dim))

    @classmethod
    def whole(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RatMatrix.identity(ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RatMatrix.zeros(0, ambient_dim))

    @classmethod
    def coordinate(cls, indices: Iterable[int], ambient_dim: int) -> Subspace:
        """Span of the standard basis vectors e_i (0-based) for i in indices."""
        vecs = []
        for i in indices:
            v = [0] * ambient_dim
            v[i] = 1
            vecs.append(v)
        return cls.span(vecs, ambient_dim)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def pivots(self) -> list[int]:
        out = []
        for i in range(self.basis.rows):
            row = self.basis.row(i)
            out.append(next(j for j, x in enumerate(row) if x))
        return out

    def rows(self) -> list[list[Fraction]]:
        return self.basis.to_rows()

    def key(self) -> tuple:
        return (self.ambient_dim, self.basis.rows, self.basis.entries)

    def contains_vector(self, v: Sequence) -> bool:
        residue = [to_rational(x) for x in v]
        for row, p in zip(self.rows(), self.pivots):
            c = residue[p]
            if c:
                residue = [a - c * b for a, b in zip(residue, row)]
        return not any(residue)

    def __repr__(self) -> str:
        if self.dim == 0:
            return f"Subspace({{0}} in Q^{self.ambient_dim})"
        vecs = ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in self.rows())
        return f"Subspace(span[{vecs}] in Q^{self.ambient_dim})"


def kernel_basis(m: RatMatrix) -> Subspace:
    """The subspace {v : m v = 0} of Q^cols."""
    rows, pivots = rref_rows(m.to_rows(), m.cols)
    return Subspace.span(_null_vectors(rows, pivots, m.cols), m.cols)


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"Q^{a.ambient_dim} vs Q^{b.ambient_dim}")


def orthogonal_complement(a: Subspace) -> Subspace:
    """Complement for the standard dot product on Q^l."""
    rows = a.rows()
    return Subspace.span(_null_vectors(rows, a.pivots, a.ambient_dim), a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    # a ∩ b is cut out by the annihilators of a and of b together
    forms = orthogonal_complement(a).rows() + orthogonal_complement(b).rows()
    if not forms:
        return Subspace.whole(a.ambient_dim)
    return kernel_basis(RatMatrix.from_rows(forms, cols=a.ambient_dim))


def sum(a: Subspace, b: Subspace) -> Subspace:  # noqa: A001 - mirrors the operation name
    _check_ambient(a, b)
    return Subspace.span(a.rows() + b.rows(), a.ambient_dim)


def codim(a: Subspace) -> int:
    return a.codim


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff ``b`` is a subspace of ``a``."""
    _check_ambient(a, b)
    if b.dim > a.dim:
        return False
    return all(a.contains_vector(row) for row in b.rows())
