"""Supercharacter tables and the unitary matrix U.

values[i, j] = sigma_i(Y_j), where sigma_i = sum over x in X_i of e(x . y / n).
Every phase is looked up from the exact residue x . y mod n.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import TOLERANCE_SCALE, tolerance
from .errors import UnitarityViolation
from .groups import Symmetry
from .modular import GVector
from .theory import Theory
from .utils import max_abs

logger = logging.getLogger(__name__)

# Max entries in one block of the phase matrix.
_BLOCK_ENTRIES = 1 << 22


def roots_of_unity(n: int) -> np.ndarray:
    """e(k/n) for k = 0..n-1."""
    return np.exp(2j * np.pi * np.arange(n) / n)


@dataclass
class SupercharacterTable:
    theory: Theory
    values: np.ndarray

    @property
    def count(self) -> int:
        return self.values.shape[0]

    @property
    def sizes_x(self) -> np.ndarray:
        return self.theory.x.sizes

    @property
    def sizes_y(self) -> np.ndarray:
        return self.theory.y.sizes

    @property
    def tolerance(self) -> float:
        return tolerance(self.count)

    def row(self, i: int) -> np.ndarray:
        return self.values[i]


def build_table(theory: Theory) -> SupercharacterTable:
    n = theory.n
    px, py = theory.x, theory.y
    roots = roots_of_unity(n)
    vectors = px.vectors
    order, offsets = px.layout
    # Rows of `vectors` grouped by X-class so each class is one contiguous run.
    grouped = vectors[order]
    reps_y = py.rep_array()
    count = theory.count
    values = np.empty((count, count), dtype=complex)
    block = max(1, _BLOCK_ENTRIES // max(1, len(vectors)))
    for start in range(0, count, block):
        stop = min(count, start + block)
        residues = (grouped @ reps_y[start:stop].T) % n
        values[:, start:stop] = np.add.reduceat(roots[residues], offsets[:-1], axis=0)
    logger.info(f"Built {count}x{count} supercharacter table for {theory.name}")
    return SupercharacterTable(theory, values)


def eval_supercharacter(theory: Theory, i: int, v: GVector) -> complex:
    """sigma_i(v) as the orbit sum over the members of X_i."""
    n = theory.n
    members = theory.x.vectors[theory.x.member_codes(i)]
    residues = (members @ v.to_array()) % n
    return complex(roots_of_unity(n)[residues].sum())


def eval_supercharacter_stab(theory: Theory, i: int, v: GVector) -> complex:
    """sigma_i(v) = |X_i| / |Gamma| * sum over A in Gamma of e(x_i . A v / n)."""
    n = theory.n
    group = theory.group
    rep = theory.x.rep_array()[i]
    images = (group.stack @ v.to_array()) % n
    residues = (images @ rep) % n
    total = roots_of_unity(n)[residues].sum()
    return complex(total * theory.x.sizes[i] / group.order)


@dataclass
class TableReport:
    trivial_row: float
    zero_column: float
    max_bound: float
    conjugate_pairs: float
    reciprocity: Optional[float]
    orthogonality: float
    tolerance: float

    @property
    def passed(self) -> bool:
        checks = [self.trivial_row, self.zero_column, self.max_bound, self.conjugate_pairs, self.orthogonality]
        if self.reciprocity is not None:
            checks.append(self.reciprocity)
        return all(c < self.tolerance for c in checks)


def check_table(table: SupercharacterTable, scale: float = TOLERANCE_SCALE) -> TableReport:
    theory = table.theory
    values = table.values
    sx = table.sizes_x.astype(float)
    sy = table.sizes_y.astype(float)
    zx, zy = theory.x.zero_index, theory.y.zero_index

    reciprocity = None
    if theory.is_symmetric:
        normalized = values / sx[:, None]
        reciprocity = max_abs(normalized - normalized.T)

    gram = (values * sy[None, :]) @ values.conj().T
    expected = np.diag(theory.size * sx)
    return TableReport(
        trivial_row=max_abs(values[zx] - 1),
        zero_column=max_abs(values[:, zy] - sx),
        max_bound=float(max(0.0, np.max(np.abs(values) - sx[:, None]))),
        conjugate_pairs=max_abs(values[theory.x.negation] - values.conj()),
        reciprocity=reciprocity,
        orthogonality=max_abs(gram - expected) / theory.size,
        tolerance=tolerance(table.count, scale),
    )


@dataclass
class UnitaryU:
    entries: np.ndarray
    permutation: np.ndarray
    symmetry: Symmetry
    tolerance: float = field(default=TOLERANCE_SCALE)

    @property
    def count(self) -> int:
        return self.entries.shape[0]

    def permutation_matrix(self) -> np.ndarray:
        p = np.zeros((self.count, self.count))
        p[np.arange(self.count), self.permutation] = 1.0
        return p


def build_U(table: SupercharacterTable, scale: float = TOLERANCE_SCALE) -> UnitaryU:
    """U[i, j] = sigma_i(Y_j) sqrt|Y_j| / (sqrt|X_i| sqrt(n^d))."""
    theory = table.theory
    sx = np.sqrt(table.sizes_x.astype(float))
    sy = np.sqrt(table.sizes_y.astype(float))
    entries = table.values * sy[None, :] / (sx[:, None] * np.sqrt(theory.size))
    tol = tolerance(table.count, scale)
    err = max_abs(entries @ entries.conj().T - np.eye(table.count))
    if err > tol:
        raise UnitarityViolation(f"{theory.name}: ||UU* - I||_max = {err:.3e} > {tol:.3e}")
    return UnitaryU(entries, theory.x.negation.copy(), theory.symmetry, tol)


@dataclass
class UnitaryReport:
    unitary_err: float
    sym_err: float
    sq_vs_P_err: float
    fourth_power_err: float
    symmetry: Symmetry
    tolerance: float

    @property
    def passed(self) -> bool:
        if self.symmetry is Symmetry.SYMMETRIC:
            checks = [self.unitary_err, self.sym_err, self.sq_vs_P_err, self.fourth_power_err]
        elif self.symmetry is Symmetry.J_SYMMETRIC:
            checks = [self.unitary_err, self.sym_err]
        else:
            checks = [self.unitary_err]
        return all(c < self.tolerance for c in checks)

    def as_dict(self) -> dict:
        return {
            "unitary": self.unitary_err,
            "symmetric": self.sym_err,
            "square_vs_P": self.sq_vs_P_err,
            "fourth_power": self.fourth_power_err,
            "passed": self.passed,
        }


def verify_unitary(u: UnitaryU) -> UnitaryReport:
    """Deviations of U from unitary, symmetric, U^2 = P and U^4 = I.

    Only the identities that hold for the group's symmetry class decide
    `passed`; the rest are reported.
    """
    m = u.entries
    eye = np.eye(u.count)
    square = m @ m
    return UnitaryReport(
        unitary_err=max_abs(m @ m.conj().T - eye),
        sym_err=max_abs(m - m.T),
        sq_vs_P_err=max_abs(square - u.permutation_matrix()),
        fourth_power_err=max_abs(square @ square - eye),
        symmetry=u.symmetry,
        tolerance=u.tolerance,
    )
