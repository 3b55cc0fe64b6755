"""Exact arithmetic over Z/nZ: residues, vectors of G = (Z/nZ)^d and d x d matrices.

Every value is immutable and stores its residues canonically in [0, n), so
vectors and matrices hash by content and can live in orbit sets.
"""
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import BadParameter, DimensionMismatch, NotInvertible, ParseError

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Modulus:
    n: int

    def __post_init__(self):
        if int(self.n) < 1:
            raise BadParameter(f"modulus must be >= 1, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    def reduce(self, x: int) -> int:
        return int(x) % self.n

    def is_unit(self, x: int) -> bool:
        return gcd(int(x) % self.n, self.n) == 1

    def inverse(self, x: int) -> int:
        if not self.is_unit(x):
            raise NotInvertible(f"{x} is not a unit mod {self.n}")
        if self.n == 1:
            return 0
        return pow(int(x) % self.n, -1, self.n)


@dataclass(frozen=True)
class GVector:
    modulus: Modulus
    coords: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) < 1:
            raise DimensionMismatch("vectors need d >= 1 coordinates")
        object.__setattr__(self, "coords", tuple(self.modulus.reduce(c) for c in self.coords))

    @classmethod
    def of(cls, n: int, coords: Iterable[int]) -> "GVector":
        return cls(Modulus(n), tuple(coords))

    @classmethod
    def zero(cls, n: int, d: int) -> "GVector":
        return cls(Modulus(n), (0,) * d)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __neg__(self) -> "GVector":
        return GVector(self.modulus, tuple(-c for c in self.coords))

    def __add__(self, other: "GVector") -> "GVector":
        _check_vectors(self, other)
        return GVector(self.modulus, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def to_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class GMatrix:
    modulus: Modulus
    entries: Rows

    def __post_init__(self):
        rows = tuple(tuple(self.modulus.reduce(x) for x in row) for row in self.entries)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise DimensionMismatch(f"matrix must be square and nonempty, got {len(rows)} rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, n: int, rows: Sequence[Sequence[int]]) -> "GMatrix":
        return cls(Modulus(n), tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int, d: int) -> "GMatrix":
        return cls.of(n, [[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def scalar(cls, n: int, u: int) -> "GMatrix":
        return cls.of(n, [[u]])

    @classmethod
    def diagonal(cls, n: int, diag: Sequence[int]) -> "GMatrix":
        d = len(diag)
        return cls.of(n, [[diag[i] if i == j else 0 for j in range(d)] for i in range(d)])

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def key(self) -> Tuple[int, ...]:
        """Row-major entry tuple; the canonical sort and set key."""
        return tuple(x for row in self.entries for x in row)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def __matmul__(self, other):
        if isinstance(other, GMatrix):
            return mat_mul(self, other)
        if isinstance(other, GVector):
            return apply(self, other)
        return NotImplemented

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.entries)


def _check_vectors(u: GVector, v: GVector):
    if u.modulus != v.modulus or u.dim != v.dim:
        raise DimensionMismatch(f"vector mismatch: Z/{u.modulus.n}^{u.dim} vs Z/{v.modulus.n}^{v.dim}")


def _check_pair(a: GMatrix, b) -> None:
    if a.modulus != b.modulus or a.dim != b.dim:
        raise DimensionMismatch(
            f"operand mismatch: {a.dim}x{a.dim} mod {a.modulus.n} vs dim {b.dim} mod {b.modulus.n}"
        )


def _mul_rows(a: Rows, b: Rows, n: int) -> Rows:
    d = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(d)) % n for j in range(d))
        for i in range(d)
    )


def mat_mul(a: GMatrix, b: GMatrix) -> GMatrix:
    _check_pair(a, b)
    return GMatrix(a.modulus, _mul_rows(a.entries, b.entries, a.modulus.n))


def _det_rows(rows: Rows) -> int:
    # Laplace expansion along the first row, exact integers.
    d = len(rows)
    if d == 1:
        return rows[0][0]
    if d == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j, pivot in enumerate(rows[0]):
        if pivot == 0:
            continue
        minor = tuple(row[:j] + row[j + 1:] for row in rows[1:])
        total += (-1) ** j * pivot * _det_rows(minor)
    return total


def mat_det(a: GMatrix) -> int:
    return a.modulus.reduce(_det_rows(a.entries))


def mat_transpose(a: GMatrix) -> GMatrix:
    return GMatrix(a.modulus, tuple(zip(*a.entries)))


def adjugate(a: GMatrix) -> GMatrix:
    d = a.dim
    if d == 1:
        return GMatrix(a.modulus, ((1,),))
    rows = a.entries
    cof = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            minor = tuple(r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i)
            cof[i][j] = (-1) ** (i + j) * _det_rows(minor)
    # adj = cofactor^T
    return GMatrix(a.modulus, tuple(zip(*cof)))


def mat_inverse(a: GMatrix) -> GMatrix:
    """A^{-1} = det(A)^{-1} adj(A); valid for composite n whenever det(A) is a unit."""
    det = mat_det(a)
    if not a.modulus.is_unit(det):
        raise NotInvertible(f"det = {det} is not a unit mod {a.modulus.n}")
    det_inv = a.modulus.inverse(det)
    adj = adjugate(a)
    return GMatrix(a.modulus, tuple(tuple(det_inv * x for x in row) for row in adj.entries))


def is_invertible(a: GMatrix) -> bool:
    return a.modulus.is_unit(mat_det(a))


def apply(a: GMatrix, v: GVector) -> GVector:
    _check_pair(a, v)
    return GVector(a.modulus, tuple(sum(x * y for x, y in zip(row, v.coords)) for row in a.entries))


def dot(u: GVector, v: GVector) -> int:
    _check_vectors(u, v)
    return u.modulus.reduce(sum(x * y for x, y in zip(u.coords, v.coords)))


def parse_vector(text: str, n: int) -> GVector:
    """Parse "0,1,2" into a vector of (Z/nZ)^3."""
    try:
        coords = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError as e:
        raise ParseError(f"bad vector {text!r}: {e}") from e
    if not coords:
        raise ParseError(f"empty vector {text!r}")
    return GVector.of(n, coords)


def parse_matrix(text: str, n: int) -> GMatrix:
    """Parse row-major "1,0;0,1" into a matrix over Z/nZ."""
    try:
        rows = [
            [int(tok) for tok in row.split(",")]
            for row in text.replace(" ", "").split(";") if row != ""
        ]
    except ValueError as e:
        raise ParseError(f"bad matrix {text!r}: {e}") from e
    if not rows:
        raise ParseError(f"empty matrix {text!r}")
    try:
        return GMatrix.of(n, rows)
    except DimensionMismatch as e:
        raise ParseError(f"bad matrix {text!r}: {e}") from e


def parse_matrix_list(text: str, n: int) -> list:
    """Parse generators written as "M1|M2|...". """
    return [parse_matrix(chunk, n) for chunk in text.split("|") if chunk.strip()]
