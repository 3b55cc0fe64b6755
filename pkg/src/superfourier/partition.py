"""Orbit partitions of G = (Z/nZ)^d under a matrix group.

Vectors are encoded as mixed-radix integers with the first coordinate most
significant, so integer order is lexicographic order. Every orbit is labelled
by its smallest code; classes are sorted by that code, which puts {0} first.
"""
import enum
import logging
from functools import cached_property
from typing import List, Sequence

import numpy as np

from .config import COUNTING_CAP, VECTOR_CAP
from .errors import CapExceeded, DimensionMismatch, InternalInconsistency, NotJSymmetric
from .groups import MatrixGroup
from .modular import GMatrix, GVector

logger = logging.getLogger(__name__)


class Action(enum.Enum):
    DIRECT = "direct"                        # y -> A y
    INVERSE_TRANSPOSE = "inverse-transpose"  # x -> A^{-T} x


def vector_space_size(n: int, d: int, cap: int = VECTOR_CAP) -> int:
    size = n ** d
    if size > cap:
        raise CapExceeded("n^d", size, cap)
    return size


def all_vectors(n: int, d: int) -> np.ndarray:
    """Every vector of (Z/nZ)^d as rows of an (n^d, d) array, in code order."""
    size = n ** d
    return np.stack(np.unravel_index(np.arange(size, dtype=np.int64), (n,) * d), axis=1).astype(np.int64)


def radix(n: int, d: int) -> np.ndarray:
    return n ** np.arange(d - 1, -1, -1, dtype=np.int64)


class SuperclassPartition:
    def __init__(
        self,
        group: MatrixGroup,
        action: Action,
        labels: np.ndarray,
        rep_codes: np.ndarray,
        negation: np.ndarray,
    ):
        self.group = group
        self.action = action
        self.n = group.n
        self.d = group.dim
        self.labels = labels
        self.rep_codes = rep_codes
        self.sizes = np.bincount(labels, minlength=len(rep_codes)).astype(np.int64)
        self.negation = negation
        self._radix = radix(self.n, self.d)

    @property
    def count(self) -> int:
        return len(self.rep_codes)

    def __len__(self) -> int:
        return self.count

    @property
    def zero_index(self) -> int:
        return int(self.labels[0])

    @property
    def max_size(self) -> int:
        return int(self.sizes.max())

    @cached_property
    def vectors(self) -> np.ndarray:
        return all_vectors(self.n, self.d)

    @cached_property
    def layout(self):
        order = np.argsort(self.labels, kind="stable")
        offsets = np.concatenate(([0], np.cumsum(self.sizes)))
        return order, offsets

    def encode(self, coords) -> np.ndarray:
        return (np.asarray(coords, dtype=np.int64) % self.n) @ self._radix

    def decode(self, code: int) -> GVector:
        return GVector.of(self.n, (int(c) for c in np.unravel_index(int(code), (self.n,) * self.d)))

    def rep(self, i: int) -> GVector:
        return self.decode(self.rep_codes[i])

    @property
    def reps(self) -> List[GVector]:
        return [self.rep(i) for i in range(self.count)]

    def rep_array(self) -> np.ndarray:
        return self.vectors[self.rep_codes]

    def class_of(self, v) -> int:
        coords = v.coords if isinstance(v, GVector) else v
        if len(coords) != self.d:
            raise DimensionMismatch(f"expected a vector of length {self.d}, got {len(coords)}")
        return int(self.labels[int(self.encode(coords))])

    def member_codes(self, i: int) -> np.ndarray:
        """Codes of the members of class i, ascending."""
        order, offsets = self.layout
        return order[offsets[i]:offsets[i + 1]]

    def members(self, i: int) -> List[GVector]:
        return [self.decode(c) for c in self.member_codes(i)]

    def reorder(self, perm: Sequence[int]) -> "SuperclassPartition":
        """New partition whose class i is this partition's class perm[i]."""
        perm = np.asarray(perm, dtype=np.int64)
        inverse = np.empty_like(perm)
        inverse[perm] = np.arange(len(perm))
        return SuperclassPartition(
            self.group,
            self.action,
            inverse[self.labels],
            self.rep_codes[perm],
            inverse[self.negation[perm]],
        )

    def same_classes(self, other: "SuperclassPartition") -> bool:
        return self.count == other.count and np.array_equal(self.labels, other.labels)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "N": self.count,
            "action": self.action.value,
            "classes": [
                {"rep": list(self.rep(i).coords), "size": int(self.sizes[i])} for i in range(self.count)
            ],
            "negation": [int(x) for x in self.negation],
        }

    def __repr__(self) -> str:
        return f"SuperclassPartition(n={self.n}, d={self.d}, N={self.count}, {self.action.value})"


def _image_matrices(group: MatrixGroup, action: Action) -> np.ndarray:
    # Row-vector form: image row = v @ M. Direct uses A^T. For the dual action the
    # group is inverse-closed, so {A^{-T}} = {B^T} and the image row is v @ B.
    stack = group.stack
    return np.transpose(stack, (0, 2, 1)) if action is Action.DIRECT else stack


def compute_partition(group: MatrixGroup, action: Action = Action.DIRECT, cap: int = VECTOR_CAP) -> SuperclassPartition:
    n, d = group.n, group.dim
    size = vector_space_size(n, d, cap)
    if size * group.order > COUNTING_CAP:
        raise CapExceeded("orbit sweep |Gamma| * n^d", size * group.order, COUNTING_CAP)

    vectors = all_vectors(n, d)
    weights = radix(n, d)
    mins = np.arange(size, dtype=np.int64)
    for m in _image_matrices(group, action):
        np.minimum(mins, ((vectors @ m) % n) @ weights, out=mins)

    rep_codes = np.unique(mins)
    labels = np.searchsorted(rep_codes, mins)
    negation = negation_pairing_codes(labels, rep_codes, vectors, n, weights)
    partition = SuperclassPartition(group, action, labels, rep_codes, negation)
    logger.info(f"{action.value} partition of (Z/{n}Z)^{d}: N = {partition.count} classes, max size {partition.max_size}")
    return partition


def negation_pairing_codes(labels, rep_codes, vectors, n, weights) -> np.ndarray:
    negated = ((-vectors) % n) @ weights
    pairing = labels[negated[rep_codes]]
    if not np.array_equal(labels[negated], pairing[labels]):
        raise InternalInconsistency("the negative of a class is not a class")
    if not np.array_equal(pairing[pairing], np.arange(len(rep_codes))):
        raise InternalInconsistency("negation pairing is not an involution")
    return pairing


def negation_pairing(p: SuperclassPartition) -> np.ndarray:
    """pi with -X_i = X_{pi(i)}."""
    return p.negation.copy()


def stabilizer_order(group: MatrixGroup, v: GVector) -> int:
    """|{A in Gamma : A v = v}|."""
    vec = v.to_array()
    images = (group.stack @ vec) % group.n
    return int(np.all(images == vec, axis=1).sum())


def j_pairing(py: SuperclassPartition, px: SuperclassPartition, j: GMatrix) -> np.ndarray:
    """Index map i -> k with J Y_i = X_k, checked on every member."""
    if py.n != px.n or py.d != px.d or j.dim != py.d:
        raise DimensionMismatch("J and the partitions must share n and d")
    images = (py.vectors @ j.to_array().T) % py.n
    image_labels = px.labels[px.encode(images)]
    pairing = image_labels[py.rep_codes]
    if not np.array_equal(image_labels, pairing[py.labels]):
        raise NotJSymmetric("J maps some Y-class onto more than one X-class")
    if len(set(pairing.tolist())) != py.count or not np.array_equal(px.sizes[pairing], py.sizes):
        raise NotJSymmetric("J does not induce a size-preserving bijection Y -> X")
    return pairing


def align_to_j(py: SuperclassPartition, px: SuperclassPartition, j: GMatrix) -> SuperclassPartition:
    """Renumber the X-classes so that X_i = J Y_i."""
    return px.reorder(j_pairing(py, px, j))
