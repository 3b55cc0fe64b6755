"""Finite matrix groups Gamma <= GL_d(Z/nZ): closure, enumeration and (J-)symmetry."""
import enum
import itertools
import logging
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .config import CLOSURE_CAP, GL_CANDIDATE_CAP, PERMUTATION_DIM_CAP
from .errors import BadParameter, CapExceeded, DimensionMismatch, NotInvertible
from .modular import (
    GMatrix,
    Modulus,
    Rows,
    _det_rows,
    _mul_rows,
    is_invertible,
    mat_inverse,
    mat_mul,
    mat_transpose,
)

logger = logging.getLogger(__name__)


class Symmetry(enum.Enum):
    SYMMETRIC = "symmetric"
    J_SYMMETRIC = "j-symmetric"
    ASYMMETRIC = "asymmetric"


class MatrixGroup:
    """A materialized finite subgroup of GL_d(Z/nZ).

    `elements` keeps insertion order (BFS order for closures); membership goes
    through the row-major key set.
    """

    def __init__(
        self,
        modulus: Modulus,
        dim: int,
        elements: Sequence[GMatrix],
        symmetry: Symmetry = Symmetry.ASYMMETRIC,
        j: Optional[GMatrix] = None,
        label: str = "custom",
    ):
        self.modulus = modulus
        self.dim = dim
        self.elements: Tuple[GMatrix, ...] = tuple(elements)
        self.symmetry = symmetry
        self.j = j
        self.label = label
        self._index: Dict[Tuple[int, ...], int] = {g.key: i for i, g in enumerate(self.elements)}
        for g in self.elements:
            if g.modulus != modulus or g.dim != dim:
                raise DimensionMismatch(f"element {g} is not a {dim}x{dim} matrix mod {modulus.n}")

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a: GMatrix) -> bool:
        return a.key in self._index

    def __repr__(self) -> str:
        return f"MatrixGroup({self.label}, n={self.n}, d={self.dim}, order={self.order}, {self.symmetry.value})"

    @cached_property
    def stack(self) -> np.ndarray:
        """All elements as an int64 array of shape (|Gamma|, d, d)."""
        return np.array([g.entries for g in self.elements], dtype=np.int64).reshape(-1, self.dim, self.dim)

    def with_symmetry(self, symmetry: Symmetry, j: Optional[GMatrix] = None) -> "MatrixGroup":
        return MatrixGroup(self.modulus, self.dim, self.elements, symmetry, j, self.label)

    def classify(self, j: Optional[GMatrix] = None) -> "MatrixGroup":
        """Return a copy carrying the symmetry found by `check_symmetry`."""
        symmetry = check_symmetry(self, j)
        return self.with_symmetry(symmetry, j if symmetry is Symmetry.J_SYMMETRIC else None)

    def is_closed(self) -> bool:
        n = self.n
        keys = self._index
        for a in self.elements:
            for b in self.elements:
                prod = _mul_rows(a.entries, b.entries, n)
                if tuple(x for row in prod for x in row) not in keys:
                    return False
        return True

    def is_inverse_closed(self) -> bool:
        return all(mat_inverse(a) in self for a in self.elements)

    @classmethod
    def from_elements(
        cls,
        elements: Iterable[GMatrix],
        n: int,
        dim: int,
        label: str = "custom",
        j: Optional[GMatrix] = None,
        validate: bool = True,
    ) -> "MatrixGroup":
        """Wrap an explicit element list; dedupes, sorts by key and classifies."""
        unique = {g.key: g for g in elements}
        ordered = [unique[k] for k in sorted(unique)]
        group = cls(Modulus(n), dim, ordered, label=label)
        if validate:
            if GMatrix.identity(n, dim) not in group:
                raise BadParameter(f"{label}: element list does not contain the identity")
            if not group.is_closed():
                raise BadParameter(f"{label}: element list is not closed under multiplication")
        return group.classify(j)


def closure(generators: Sequence[GMatrix], cap: int = CLOSURE_CAP, label: str = "custom",
            j: Optional[GMatrix] = None) -> MatrixGroup:
    """Smallest multiplicatively closed set containing the generators and I.

    Breadth-first: each layer is the set of new right-products of the previous
    layer with a generator, visited in lexicographic key order. For a finite
    group this is also inverse-closed.
    """
    if not generators:
        raise BadParameter("closure needs at least one generator")
    modulus = generators[0].modulus
    d = generators[0].dim
    for g in generators:
        if g.modulus != modulus or g.dim != d:
            raise DimensionMismatch("generators must share modulus and dimension")
        if not is_invertible(g):
            raise NotInvertible(f"generator {g} is not invertible mod {modulus.n}")

    n = modulus.n
    identity = GMatrix.identity(n, d)
    gens: List[Rows] = [g.entries for g in generators]
    seen = {identity.key: identity.entries}
    order: List[Rows] = [identity.entries]
    frontier: List[Rows] = [identity.entries]
    while frontier:
        discovered: Dict[Tuple[int, ...], Rows] = {}
        for a in frontier:
            for g in gens:
                prod = _mul_rows(a, g, n)
                key = tuple(x for row in prod for x in row)
                if key not in seen and key not in discovered:
                    discovered[key] = prod
        for key in sorted(discovered):
            seen[key] = discovered[key]
            order.append(discovered[key])
        if len(order) > cap:
            raise CapExceeded("closure size", len(order), cap)
        frontier = [discovered[k] for k in sorted(discovered)]

    group = MatrixGroup(modulus, d, [GMatrix(modulus, rows) for rows in order], label=label)
    logger.info(f"Closed {len(generators)} generator(s) into a group of order {group.order}")
    return group.classify(j)


def check_symmetry(g: MatrixGroup, j: Optional[GMatrix] = None) -> Symmetry:
    """Symmetric if Gamma^T = Gamma; J-symmetric if J = J^T is invertible and J Gamma = Gamma^T J."""
    if all(mat_transpose(a) in g for a in g.elements):
        return Symmetry.SYMMETRIC
    if j is None:
        return Symmetry.ASYMMETRIC
    if j.modulus != g.modulus or j.dim != g.dim:
        raise DimensionMismatch("J must match the group's modulus and dimension")
    if mat_transpose(j) != j or not is_invertible(j):
        return Symmetry.ASYMMETRIC
    left = {mat_mul(j, a).key for a in g.elements}
    right = {mat_mul(mat_transpose(a), j).key for a in g.elements}
    return Symmetry.J_SYMMETRIC if left == right else Symmetry.ASYMMETRIC


def _enumerate_by_det(n: int, d: int, cap: int, accept) -> List[GMatrix]:
    candidates = n ** (d * d)
    if candidates > cap:
        raise CapExceeded("candidate matrices n^(d^2)", candidates, cap)
    modulus = Modulus(n)
    found = []
    for flat in itertools.product(range(n), repeat=d * d):
        rows = tuple(tuple(flat[i * d:(i + 1) * d]) for i in range(d))
        if accept(_det_rows(rows) % n):
            found.append(GMatrix(modulus, rows))
    return found


def enumerate_GL(n: int, d: int, cap: int = GL_CANDIDATE_CAP) -> MatrixGroup:
    """All d x d matrices with unit determinant mod n, in lexicographic order."""
    modulus = Modulus(n)
    elements = _enumerate_by_det(n, d, cap, modulus.is_unit)
    logger.info(f"|GL_{d}(Z/{n}Z)| = {len(elements)}")
    return MatrixGroup(modulus, d, elements, Symmetry.SYMMETRIC, label=f"GL_{d}(Z/{n}Z)")


def enumerate_SL(n: int, d: int, cap: int = GL_CANDIDATE_CAP) -> MatrixGroup:
    """Determinant-one matrices mod n; transpose-closed like GL."""
    one = 1 % n
    elements = _enumerate_by_det(n, d, cap, lambda det: det == one)
    return MatrixGroup(Modulus(n), d, elements, Symmetry.SYMMETRIC, label=f"SL_{d}(Z/{n}Z)")


def permutation_group(n: int, d: int, dim_cap: int = PERMUTATION_DIM_CAP) -> MatrixGroup:
    """S_d as the d! permutation matrices over Z/nZ (A^T = A^{-1}, so symmetric)."""
    if d < 1:
        raise BadParameter(f"dimension must be >= 1, got {d}")
    if d > dim_cap:
        raise CapExceeded("permutation dimension d", d, dim_cap)
    modulus = Modulus(n)
    elements = []
    for perm in itertools.permutations(range(d)):
        rows = tuple(tuple(1 if perm[i] == j else 0 for j in range(d)) for i in range(d))
        elements.append(GMatrix(modulus, rows))
    return MatrixGroup(modulus, d, elements, Symmetry.SYMMETRIC, label=f"S_{d}")
