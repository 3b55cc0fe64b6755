"""The super-Fourier transform on superclass functions."""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import SUPPORT_THRESHOLD
from .errors import CapExceeded, DimensionMismatch, TheoryMismatch, ZeroFunction
from .groups import Symmetry
from .table import SupercharacterTable, UnitaryU
from .theory import Theory

logger = logging.getLogger(__name__)

DOMAIN_Y = "y"
DOMAIN_X = "x"

MINOR_SEARCH_CAP = 200


@dataclass(frozen=True)
class SuperclassFunction:
    """A complex value per class. Functions live on the Y-classes, transforms on the X-classes."""

    theory: Theory
    values: np.ndarray
    domain: str = DOMAIN_Y

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.theory.count,):
            raise DimensionMismatch(f"expected {self.theory.count} class values, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @classmethod
    def delta(cls, theory: Theory, i: int, domain: str = DOMAIN_Y) -> "SuperclassFunction":
        values = np.zeros(theory.count, dtype=complex)
        values[i] = 1.0
        return cls(theory, values, domain)

    @classmethod
    def constant(cls, theory: Theory, c: complex = 1.0) -> "SuperclassFunction":
        return cls(theory, np.full(theory.count, c, dtype=complex))

    @property
    def sizes(self) -> np.ndarray:
        part = self.theory.y if self.domain == DOMAIN_Y else self.theory.x
        return part.sizes

    def negated(self) -> "SuperclassFunction":
        """X -> f(-X)."""
        part = self.theory.y if self.domain == DOMAIN_Y else self.theory.x
        return SuperclassFunction(self.theory, self.values[part.negation], self.domain)

    def to_pairs(self) -> list:
        return [[float(v.real), float(v.imag)] for v in self.values]


@dataclass(frozen=True)
class Norms:
    l2: float
    sup: float


def _check_theory(table: SupercharacterTable, f: SuperclassFunction, domain: str):
    if f.theory is not table.theory:
        raise TheoryMismatch(f"function belongs to {f.theory.name}, table to {table.theory.name}")
    if f.domain != domain:
        raise TheoryMismatch(f"expected a function on the {domain.upper()}-classes, got {f.domain.upper()}")


def forward_matrix(table: SupercharacterTable) -> np.ndarray:
    """F with f_hat = F @ f.

    Symmetric and J-symmetric groups use the paired formula
    f_hat(X_i) = n^{-d/2} sum_l f(Y_l) conj sigma_l(Y_i). Other groups use the
    orthogonal projection onto the supercharacters, which agrees with the
    paired formula whenever the latter applies.
    """
    theory = table.theory
    root = np.sqrt(theory.size)
    if theory.symmetry in (Symmetry.SYMMETRIC, Symmetry.J_SYMMETRIC):
        return table.values.conj().T / root
    sx = table.sizes_x.astype(float)
    sy = table.sizes_y.astype(float)
    return table.values.conj() * sy[None, :] / (root * sx[:, None])


def inverse_matrix(table: SupercharacterTable) -> np.ndarray:
    """f = n^{-d/2} sum_l f_hat(X_l) sigma_l."""
    return table.values.T / np.sqrt(table.theory.size)


def forward(table: SupercharacterTable, f: SuperclassFunction) -> SuperclassFunction:
    _check_theory(table, f, DOMAIN_Y)
    return SuperclassFunction(table.theory, forward_matrix(table) @ f.values, DOMAIN_X)


def inverse(table: SupercharacterTable, fh: SuperclassFunction) -> SuperclassFunction:
    _check_theory(table, fh, DOMAIN_X)
    return SuperclassFunction(table.theory, inverse_matrix(table) @ fh.values, DOMAIN_Y)


def iterate_forward(table: SupercharacterTable, f: SuperclassFunction, times: int) -> SuperclassFunction:
    """Apply the transform repeatedly; only meaningful when X and Y classes coincide."""
    if not table.theory.is_symmetric:
        raise TheoryMismatch("repeated transforms need a symmetric group")
    matrix = forward_matrix(table)
    values = f.values
    for _ in range(times):
        values = matrix @ values
    return SuperclassFunction(table.theory, values, f.domain)


def support(f: SuperclassFunction, threshold: float = SUPPORT_THRESHOLD) -> np.ndarray:
    return np.flatnonzero(np.abs(f.values) > threshold)


def norms(f: SuperclassFunction) -> Norms:
    l2 = float(np.sqrt(np.sum(f.sizes * np.abs(f.values) ** 2)))
    sup = float(np.max(np.abs(f.values))) if f.values.size else 0.0
    return Norms(l2=l2, sup=sup)


def uncertainty_lhs(theory: Theory) -> int:
    """ceil(n^d / M), M the largest class size, in integer arithmetic.

    This is the class-count statistic reported next to each check. It is not a
    lower bound: dct(8) with f the indicator of {2, 6} has supports 1 and 3
    against ceil(8 / 2) = 4.
    """
    return -(-theory.size // theory.x.max_size)


def uncertainty_bound(theory: Theory) -> int:
    """ceil(n^d / M^2): the support-product bound for symmetric and J-symmetric groups.

    Lifting f to G multiplies each support by at most M, and the lifted pair
    obeys |supp F| |supp F_hat| >= n^d.
    """
    m = max(theory.x.max_size, theory.y.max_size)
    return -(-theory.size // (m * m))


@dataclass(frozen=True)
class UncertaintyCheck:
    lhs: int
    support_f: int
    support_fh: int
    bound: int

    @property
    def product(self) -> int:
        return self.support_f * self.support_fh

    @property
    def holds(self) -> bool:
        """The provable bound ceil(n^d / M^2) <= |supp f| |supp f_hat|."""
        return self.bound <= self.product

    @property
    def meets_lhs(self) -> bool:
        return self.lhs <= self.product

    def as_dict(self) -> dict:
        return {"lhs": self.lhs, "bound": self.bound, "support_f": self.support_f,
                "support_fh": self.support_fh, "holds": self.holds, "meets_lhs": self.meets_lhs}


def check_uncertainty(table: SupercharacterTable, f: SuperclassFunction,
                      threshold: float = SUPPORT_THRESHOLD) -> UncertaintyCheck:
    supp = support(f, threshold)
    if supp.size == 0:
        raise ZeroFunction("the uncertainty bound needs a nonzero function")
    fh = forward(table, f)
    theory = table.theory
    return UncertaintyCheck(uncertainty_lhs(theory), int(supp.size), int(support(fh, threshold).size),
                            uncertainty_bound(theory))


def transform_matrix(table: SupercharacterTable) -> np.ndarray:
    """Matrix of the transform in the orthonormal basis s_i = sigma_i / sqrt(n^d |X_i|).

    Column k holds the s-coordinates of the transform of s_k, which is U*.
    """
    theory = table.theory
    if not theory.is_symmetric:
        raise TheoryMismatch("the s-basis matrix needs X and Y classes to coincide")
    sx = table.sizes_x.astype(float)
    # basis[i, l] = s_i(X_l)
    basis = table.values / np.sqrt(theory.size * sx)[:, None]
    images = forward_matrix(table) @ basis.T
    # s-coordinates of g: sum_l |X_l| g(X_l) conj s_i(X_l)
    return (basis.conj() * sx[None, :]) @ images


def singular_minors(u: UnitaryU, tol: Optional[float] = None, cap: int = MINOR_SEARCH_CAP) -> int:
    """Count the 2x2 minors of U with |det| below tol."""
    m = u.entries
    count = m.shape[0]
    if count > cap:
        raise CapExceeded("minor search N", count, cap)
    tol = u.tolerance if tol is None else tol
    rows, cols = np.triu_indices(count, k=1)
    found = 0
    for a, b in zip(rows, cols):
        minors = np.outer(m[a], m[b])
        det = minors[rows, cols] - minors[cols, rows]
        found += int(np.count_nonzero(np.abs(det) < tol))
    logger.debug(f"{found} singular 2x2 minors out of {len(rows) ** 2}")
    return found


def random_functions(theory: Theory, count: int, rng: np.random.Generator) -> np.ndarray:
    """Rows of sparse complex Gaussians; support size uniform in [1, N]."""
    size = theory.count
    out = np.zeros((count, size), dtype=complex)
    for row in out:
        k = int(rng.integers(1, size + 1))
        idx = rng.choice(size, size=k, replace=False)
        row[idx] = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    return out


def function_from_pairs(theory: Theory, pairs: Sequence[Sequence[float]], domain: str = DOMAIN_Y) -> SuperclassFunction:
    """Build a function from a JSON-style [[re, im], ...] list."""
    try:
        values = np.array([complex(float(re), float(im)) for re, im in pairs], dtype=complex)
    except (TypeError, ValueError) as e:
        raise DimensionMismatch(f"expected [[re, im], ...] pairs: {e}") from e
    return SuperclassFunction(theory, values, domain)
