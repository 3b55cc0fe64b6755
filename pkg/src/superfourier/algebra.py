"""Superclass algebra: structure constants, the matrices T_i and their diagonalization by U."""
import logging
from dataclasses import dataclass

import numpy as np

from .config import ALGEBRA_CLASS_CAP, COUNTING_CAP, TOLERANCE_SCALE, tolerance
from .errors import CapExceeded, NotSymmetric
from .table import SupercharacterTable, UnitaryU
from .theory import Theory
from .utils import max_abs

logger = logging.getLogger(__name__)


@dataclass
class StructureConstants:
    """c[i, j, k] = |{(x, y) in X_i x X_j : x + y = z}| for a fixed z in X_k."""

    theory: Theory
    c: np.ndarray
    recount_mismatches: int
    recounted: int

    @property
    def count(self) -> int:
        return self.c.shape[0]

    @property
    def independent(self) -> bool:
        return self.recount_mismatches == 0

    def conservation_residual(self) -> int:
        """max |sum_k c_ijk |X_k| - |X_i||X_j||, exact."""
        sizes = self.theory.x.sizes
        total = np.einsum("ijk,k->ij", self.c, sizes)
        return int(np.max(np.abs(total - np.outer(sizes, sizes))))

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.c, np.transpose(self.c, (1, 0, 2))))


def _count_for(labels: np.ndarray, vectors: np.ndarray, codes_of, z: np.ndarray, count: int) -> np.ndarray:
    # Every x in G pairs with y = z - x; tally (class(x), class(y)).
    partners = labels[codes_of(z[None, :] - vectors)]
    return np.bincount(labels * count + partners, minlength=count * count).reshape(count, count)


def compute_structure_constants(theory: Theory, recount: bool = True,
                                class_cap: int = ALGEBRA_CLASS_CAP) -> StructureConstants:
    if not theory.is_symmetric:
        raise NotSymmetric(f"{theory.name}: structure constants are defined here for symmetric groups only")
    part = theory.x
    count = part.count
    if count > class_cap:
        raise CapExceeded("classes for the structure tensor", count, class_cap)
    work = count * theory.size * (2 if recount else 1)
    if work > COUNTING_CAP:
        raise CapExceeded("structure-constant counting work", work, COUNTING_CAP)

    vectors = part.vectors
    c = np.zeros((count, count, count), dtype=np.int64)
    mismatches = recounted = 0
    for k in range(count):
        members = part.member_codes(k)
        c[:, :, k] = _count_for(part.labels, vectors, part.encode, vectors[members[0]], count)
        if recount and len(members) > 1:
            recounted += 1
            again = _count_for(part.labels, vectors, part.encode, vectors[members[1]], count)
            if not np.array_equal(again, c[:, :, k]):
                mismatches += 1
                logger.error(f"{theory.name}: structure constants depend on the representative of class {k}")
    logger.info(f"Structure constants for {theory.name}: {count}^3 tensor, {recounted} classes recounted")
    return StructureConstants(theory, c, mismatches, recounted)


@dataclass
class TMatrixFamily:
    t: np.ndarray  # (N, N, N); t[i] = T_i
    d: np.ndarray  # (N, N); d[i] = diagonal of D_i = (sigma_i(X_1), ..., sigma_i(X_N))

    @property
    def count(self) -> int:
        return self.t.shape[0]


def build_T(sc: StructureConstants, table: SupercharacterTable) -> TMatrixFamily:
    """[T_i]_{j,k} = c_{i,j,k} sqrt|X_k| / sqrt|X_j|."""
    root = np.sqrt(sc.theory.x.sizes.astype(float))
    t = sc.c * root[None, None, :] / root[None, :, None]
    return TMatrixFamily(t=t, d=table.values.copy())


def eigenvalues(fam: TMatrixFamily, u: UnitaryU, i: int) -> np.ndarray:
    """Eigenvalues of T_i read off as diag(U* T_i U)."""
    m = u.entries
    return np.diag(m.conj().T @ fam.t[i] @ m)


@dataclass
class AlgebraReport:
    product_identity: float
    diagonalization: float
    commutator: float
    rank: int
    conservation: int
    commutative: bool
    independent: bool
    count: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return (
            self.product_identity < self.tolerance * self.count
            and self.diagonalization < self.tolerance
            and self.commutator < self.tolerance
            and self.rank == self.count
            and self.conservation == 0
            and self.commutative
            and self.independent
        )

    def as_dict(self) -> dict:
        return {
            "product_identity": self.product_identity,
            "diagonalization": self.diagonalization,
            "commutator": self.commutator,
            "rank": self.rank,
            "conservation": self.conservation,
            "commutative": self.commutative,
            "independent": self.independent,
            "passed": self.passed,
        }


def verify_algebra(fam: TMatrixFamily, u: UnitaryU, sc: StructureConstants,
                    scale: float = TOLERANCE_SCALE) -> AlgebraReport:
    """Residuals of the product identity, T_i U = U D_i, normality and the basis property."""
    v = fam.d
    m = u.entries
    count = fam.count

    lhs = np.einsum("il,jl->ijl", v, v)
    rhs = np.einsum("ijk,kl->ijl", sc.c, v)
    diag = max_abs(fam.t @ m - m[None, :, :] * v[:, None, :])
    t_star = np.conj(np.transpose(fam.t, (0, 2, 1)))
    commutator = max_abs(t_star @ fam.t - fam.t @ t_star)

    return AlgebraReport(
        product_identity=max_abs(lhs - rhs),
        diagonalization=diag,
        commutator=commutator,
        rank=int(np.linalg.matrix_rank(v)),
        conservation=sc.conservation_residual(),
        commutative=sc.is_commutative(),
        independent=sc.independent,
        count=count,
        tolerance=tolerance(count, scale),
    )
