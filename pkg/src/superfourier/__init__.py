"""Supercharacter theories on (Z/nZ)^d, the super-Fourier transform and the exponential sums they produce."""

__version__ = "0.1.0"

from .algebra import StructureConstants, build_T, compute_structure_constants, verify_algebra  # noqa: E402
from .catalog import FAMILIES, build_named  # noqa: E402
from .errors import SuperFourierError  # noqa: E402
from .groups import MatrixGroup, Symmetry, closure  # noqa: E402
from .modular import GMatrix, GVector, Modulus  # noqa: E402
from .partition import Action, SuperclassPartition, compute_partition  # noqa: E402
from .table import SupercharacterTable, build_U, build_table, verify_unitary  # noqa: E402
from .theory import Theory, build_theory  # noqa: E402
from .transform import SuperclassFunction, forward, inverse  # noqa: E402

__all__ = [
    "Action",
    "FAMILIES",
    "GMatrix",
    "GVector",
    "MatrixGroup",
    "Modulus",
    "StructureConstants",
    "SuperFourierError",
    "SuperclassFunction",
    "SuperclassPartition",
    "SupercharacterTable",
    "Symmetry",
    "Theory",
    "build_T",
    "build_U",
    "build_named",
    "build_table",
    "build_theory",
    "closure",
    "compute_partition",
    "compute_structure_constants",
    "forward",
    "inverse",
    "verify_unitary",
    "verify_algebra",
]
