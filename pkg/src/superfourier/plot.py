import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .config import VECTOR_CAP  # noqa: E402
from .errors import CapExceeded, DimensionMismatch  # noqa: E402
from .modular import GVector  # noqa: E402
from .table import roots_of_unity  # noqa: E402
from .theory import Theory  # noqa: E402

logger = logging.getLogger(__name__)

CANVAS_INCHES = 8
DPI = 100
POINT_AREA = 1.2  # pt^2, about a 1.5 px dot at 100 dpi
ROUND_DECIMALS = 9


@dataclass(frozen=True)
class PlotSummary:
    class_index: int
    points: np.ndarray
    radius: int
    path: Optional[Path]

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def max_modulus(self) -> float:
        return float(np.max(np.abs(self.points))) if len(self.points) else 0.0


def supercharacter_image(theory: Theory, i: int) -> np.ndarray:
    """Distinct values of sigma_i over G, one per value (sigma_i is constant on Y-classes)."""
    n = theory.n
    part = theory.x
    members = part.vectors[part.member_codes(i)]
    reps = theory.y.rep_array()
    values = roots_of_unity(n)[(reps @ members.T) % n].sum(axis=1)
    rounded = np.round(values, ROUND_DECIMALS) + 0.0  # +0.0 folds -0.0 into 0.0
    keys = np.unique(np.stack([rounded.real, rounded.imag], axis=1), axis=0)
    return keys[:, 0] + 1j * keys[:, 1]


def render_supercharacter_plot(
    theory: Theory,
    target: Union[int, GVector],
    out: Optional[Union[str, Path]] = None,
    cap: int = VECTOR_CAP,
) -> PlotSummary:
    """Scatter the image of sigma_X in the complex plane as an SVG.

    `target` is a class index or a vector x, in which case X is the class of x.
    """
    if theory.size > cap:
        raise CapExceeded("plot points n^d", theory.size, cap)
    if isinstance(target, GVector):
        if target.dim != theory.d or target.modulus.n != theory.n:
            raise DimensionMismatch(f"x must lie in (Z/{theory.n}Z)^{theory.d}")
        i = theory.x.class_of(target)
    else:
        i = int(target)
    radius = int(theory.x.sizes[i])
    points = supercharacter_image(theory, i)
    path = Path(out) if out is not None else None
    if path is not None:
        _write_svg(points, radius, path)
        logger.info(f"Wrote {len(points)} points of sigma_{i} to {path}")
    return PlotSummary(class_index=i, points=points, radius=radius, path=path)


def _write_svg(points: np.ndarray, radius: int, path: Path):
    plt.rcParams["svg.hashsalt"] = "superfourier"
    fig, ax = plt.subplots(figsize=(CANVAS_INCHES, CANVAS_INCHES), dpi=DPI)
    try:
        bound = 1.05 * max(radius, 1)
        ax.axhline(0, color="0.7", linewidth=0.5)
        ax.axvline(0, color="0.7", linewidth=0.5)
        ax.scatter(points.real, points.imag, s=POINT_AREA, c="black", linewidths=0)
        ax.set_xlim(-bound, bound)
        ax.set_ylim(-bound, bound)
        ax.set_aspect("equal")
        ax.set_axis_off()
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
