import logging
from dataclasses import dataclass, field
from typing import Optional

from .config import VECTOR_CAP
from .errors import InternalInconsistency
from .groups import MatrixGroup, Symmetry
from .modular import GMatrix
from .partition import Action, SuperclassPartition, align_to_j, compute_partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Theory:
    """A supercharacter theory on (Z/nZ)^d: the group plus its two aligned partitions.

    `y` holds the superclasses (direct action), `x` the character-index
    classes (inverse-transpose action). They are the same object when the
    group is symmetric; in the J-symmetric case `x` is renumbered so that
    X_i = J Y_i.
    """

    name: str
    group: MatrixGroup
    y: SuperclassPartition
    x: SuperclassPartition
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def d(self) -> int:
        return self.group.dim

    @property
    def size(self) -> int:
        return self.n ** self.d

    @property
    def count(self) -> int:
        return self.y.count

    @property
    def symmetry(self) -> Symmetry:
        return self.group.symmetry

    @property
    def j(self) -> Optional[GMatrix]:
        return self.group.j

    @property
    def is_symmetric(self) -> bool:
        return self.group.symmetry is Symmetry.SYMMETRIC

    def describe(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "d": self.d,
            "group_order": self.group.order,
            "symmetry": self.symmetry.value,
            "N": self.count,
            **{k: v for k, v in self.params.items()},
        }

    def __repr__(self) -> str:
        return f"Theory({self.name}, n={self.n}, d={self.d}, N={self.count}, {self.symmetry.value})"


def build_theory(group: MatrixGroup, name: Optional[str] = None, params: Optional[dict] = None,
                 cap: int = VECTOR_CAP) -> Theory:
    py = compute_partition(group, Action.DIRECT, cap)
    px = compute_partition(group, Action.INVERSE_TRANSPOSE, cap)
    if py.count != px.count:
        raise InternalInconsistency(f"direct action gives {py.count} orbits but the dual action gives {px.count}")

    if group.symmetry is Symmetry.SYMMETRIC:
        if not py.same_classes(px):
            raise InternalInconsistency("symmetric group but the two orbit partitions differ")
        px = py
    elif group.symmetry is Symmetry.J_SYMMETRIC:
        px = align_to_j(py, px, group.j)
    else:
        logger.warning(f"{name or group.label}: group is neither symmetric nor J-symmetric")

    theory = Theory(name or group.label, group, py, px, dict(params or {}))
    logger.info(f"Built {theory!r}")
    return theory
