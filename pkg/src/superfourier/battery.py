"""Verification battery: unitarity, transform and algebra checks over a list of catalog theories."""
import asyncio
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Tuple

import numpy as np
from tqdm.asyncio import tqdm

from .algebra import build_T, compute_structure_constants, verify_algebra
from .catalog import build_named, closed_form_table, symmetric_uncertainty_constant
from .config import DEFAULT_CONFIG, SUPPORT_THRESHOLD, TOLERANCE_SCALE, tolerance
from .errors import BadParameter, SuperFourierError
from .groups import Symmetry
from .table import build_U, build_table, check_table, verify_unitary
from .theory import Theory
from .transform import forward_matrix, inverse_matrix, random_functions, uncertainty_bound, uncertainty_lhs
from .utils import max_abs, resolve_threads

logger = logging.getLogger(__name__)

ALGEBRA_MAX_CLASSES = 60
SYMMETRIC_MAX_POINTS = 10**5
SYMMETRIC_MAX_DIM = 6
SYMMETRIC_MAX_N = 12
SYMMETRIC_MAX_CLASSES = 400

Entry = Tuple[str, Dict[str, int]]


def _multisets(n: int, d: int) -> int:
    return comb(n + d - 1, d)


def default_battery() -> List[Entry]:
    entries: List[Entry] = []
    entries += [("max-collapse", {"n": n, "d": d}) for n in (2, 3, 5) for d in (1, 2)]
    entries += [("dft", {"n": n}) for n in range(1, 17)]
    entries += [("dct", {"n": n}) for n in range(2, 17)]
    entries += [("gauss", {"p": p, "k": k}) for p in (5, 7, 13, 17, 19) for k in range(1, p) if (p - 1) % k == 0]
    entries += [("kloosterman", {"p": p}) for p in (3, 5, 7, 11, 13)]
    entries += [("heilbronn", {"p": p}) for p in (3, 5, 7)]
    entries += [("ramanujan", {"n": n}) for n in range(1, 37)]
    entries += [
        ("symmetric", {"n": n, "d": d})
        for d in range(1, SYMMETRIC_MAX_DIM + 1)
        for n in range(1, SYMMETRIC_MAX_N + 1)
        if n ** d <= SYMMETRIC_MAX_POINTS and _multisets(n, d) <= SYMMETRIC_MAX_CLASSES
    ]
    entries += [("jsym-triangular", {"p": p}) for p in (3, 5, 7, 11)]
    return entries


def quick_battery() -> List[Entry]:
    return [
        ("max-collapse", {"n": 2, "d": 2}),
        ("max-collapse", {"n": 3, "d": 1}),
        ("dft", {"n": 1}),
        ("dft", {"n": 4}),
        ("dft", {"n": 5}),
        ("dct", {"n": 4}),
        ("dct", {"n": 5}),
        ("gauss", {"p": 5, "k": 2}),
        ("gauss", {"p": 7, "k": 3}),
        ("gauss", {"p": 13, "k": 2}),
        ("kloosterman", {"p": 3}),
        ("kloosterman", {"p": 5}),
        ("heilbronn", {"p": 3}),
        ("ramanujan", {"n": 1}),
        ("ramanujan", {"n": 6}),
        ("ramanujan", {"n": 12}),
        ("symmetric", {"n": 3, "d": 2}),
        ("symmetric", {"n": 2, "d": 3}),
        ("jsym-triangular", {"p": 3}),
        ("jsym-triangular", {"p": 5}),
    ]


BATTERIES = {"default": default_battery, "quick": quick_battery}


@dataclass
class TheoryResult:
    index: int
    name: str
    count: int = 0
    symmetry: str = ""
    table: Dict[str, float] = field(default_factory=dict)
    unitary: Dict[str, float] = field(default_factory=dict)
    transform: Dict[str, float] = field(default_factory=dict)
    algebra: Optional[Dict[str, float]] = None
    extras: Dict[str, float] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and not self.failures

    @property
    def max_residual(self) -> float:
        """Largest float residual over all sections (counts and flags are skipped)."""
        sections = [self.table, self.unitary, self.transform, self.algebra or {}]
        values = [v for s in sections for v in s.values() if isinstance(v, float)]
        return max(values, default=0.0)

    def summary(self) -> dict:
        return {
            "theory": self.name,
            "N": self.count,
            "symmetry": self.symmetry,
            "max_residual": self.max_residual,
            "algebra": self.algebra is not None,
            "passed": self.passed,
            "failures": "; ".join(self.failures + ([self.error] if self.error else [])),
        }

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "N": self.count,
            "symmetry": self.symmetry,
            "table": self.table,
            "unitary": self.unitary,
            "transform": self.transform,
            "algebra": self.algebra,
            "extras": self.extras,
            "failures": self.failures,
            "error": self.error,
            "passed": self.passed,
        }


@dataclass
class BatteryReport:
    name: str
    results: List[TheoryResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failed(self) -> List[TheoryResult]:
        return [r for r in self.results if not r.passed]

    def as_dict(self) -> dict:
        return {
            "battery": self.name,
            "theories": len(self.results),
            "failed": len(self.failed),
            "passed": self.passed,
            "results": [r.as_dict() for r in self.results],
        }


def _check_table(theory: Theory, table, result: TheoryResult, scale: float):
    report = check_table(table, scale)
    result.table = {
        "trivial_row": report.trivial_row,
        "zero_column": report.zero_column,
        "max_bound": report.max_bound,
        "conjugate_pairs": report.conjugate_pairs,
        "orthogonality": report.orthogonality,
    }
    if report.reciprocity is not None:
        result.table["reciprocity"] = report.reciprocity
    expected = closed_form_table(theory)
    if expected is not None:
        result.table["closed_form"] = max_abs(table.values - expected)
        if result.table["closed_form"] >= report.tolerance:
            result.failures.append("closed-form table")
    if not report.passed:
        result.failures.append("table invariants")


def _check_transform(theory: Theory, table, result: TheoryResult, config: dict):
    tol = tolerance(theory.count, config.get("tolerance", TOLERANCE_SCALE))
    threshold = config.get("support_threshold", SUPPORT_THRESHOLD)
    rng = np.random.default_rng([int(config.get("seed", 0)), result.index])
    f = random_functions(theory, int(config.get("random_functions", 1000)), rng)

    fwd = forward_matrix(table)
    fh = f @ fwd.T
    norm_f = np.sqrt((np.abs(f) ** 2) @ theory.y.sizes)
    norm_fh = np.sqrt((np.abs(fh) ** 2) @ theory.x.sizes)
    parseval = float(np.max(np.abs(norm_fh - norm_f) / norm_f))
    roundtrip = max_abs(fh @ inverse_matrix(table).T - f) / max(1.0, max_abs(f))

    lhs = uncertainty_lhs(theory)
    bound = uncertainty_bound(theory)
    products = np.count_nonzero(np.abs(f) > threshold, axis=1) * np.count_nonzero(np.abs(fh) > threshold, axis=1)
    violations = int(np.count_nonzero(products < bound))

    result.transform = {
        "parseval": parseval,
        "roundtrip": roundtrip,
        "uncertainty_bound": bound,
        "uncertainty_min_product": int(products.min()),
        "uncertainty_violations": violations,
        # class-count statistic; reported, never gating
        "uncertainty_lhs": lhs,
        "uncertainty_lhs_violations": int(np.count_nonzero(products < lhs)),
    }
    if violations and theory.symmetry is not Symmetry.ASYMMETRIC:
        result.failures.append("uncertainty")
    if parseval >= tol or roundtrip >= tol:
        result.failures.append("parseval/roundtrip")

    if theory.is_symmetric:
        fh2 = fh @ fwd.T
        fh4 = fh2 @ fwd.T @ fwd.T
        scale = max(1.0, max_abs(f))
        result.transform["square_vs_negation"] = max_abs(fh2 - f[:, theory.x.negation]) / scale
        result.transform["fourth_power"] = max_abs(fh4 - f) / scale
        if result.transform["square_vs_negation"] >= tol or result.transform["fourth_power"] >= tol:
            result.failures.append("F^2 / F^4")


def _check_algebra(theory: Theory, table, u, result: TheoryResult, scale: float):
    sc = compute_structure_constants(theory)
    fam = build_T(sc, table)
    report = verify_algebra(fam, u, sc, scale)
    result.algebra = report.as_dict()
    if not report.passed:
        result.failures.append("algebra identities")
    if theory.params.get("family") == "dft":
        n = theory.n
        shifts = np.array([np.roll(np.eye(n), i, axis=1) for i in range(n)])
        exact = bool(np.array_equal(sc.c, shifts.astype(np.int64)))
        result.algebra["circulant"] = exact
        if not exact:
            result.failures.append("circulant shifts")


def _check_extras(theory: Theory, result: TheoryResult):
    params = theory.params
    family = params.get("family")
    lhs = uncertainty_lhs(theory)
    if family == "symmetric":
        constant = symmetric_uncertainty_constant(params["n"], params["d"])
        result.extras["symmetric_constant"] = constant
        if constant != lhs:
            result.failures.append("symmetric uncertainty constant")
    elif family in ("kloosterman", "heilbronn"):
        expected_n = params["p"] + 2
        result.extras["expected_N"] = expected_n
        if theory.count != expected_n:
            result.failures.append("class count")
    elif family == "gauss":
        expected_lhs = params["k"] + 1
        result.extras["expected_lhs"] = expected_lhs
        if lhs != expected_lhs or theory.count != params["k"] + 1:
            result.failures.append("gauss class count / uncertainty")


def run_theory(index: int, family: str, params: Dict[str, int], config: dict) -> TheoryResult:
    result = TheoryResult(index=index, name=family)
    scale = config.get("tolerance", TOLERANCE_SCALE)
    try:
        theory = build_named(family, **params)
        result.name = theory.name
        result.count = theory.count
        result.symmetry = theory.symmetry.value
        table = build_table(theory)
        _check_table(theory, table, result, scale)
        u = build_U(table, scale)
        check = verify_unitary(u)
        result.unitary = {k: v for k, v in check.as_dict().items() if k != "passed"}
        if not check.passed:
            result.failures.append("unitary identities")
        _check_transform(theory, table, result, config)
        if theory.is_symmetric and theory.count <= ALGEBRA_MAX_CLASSES:
            _check_algebra(theory, table, u, result, scale)
        _check_extras(theory, result)
    except SuperFourierError as e:
        result.error = f"{type(e).__name__}: {e}"
        logger.error(f"{result.name}: {result.error}")
    if result.failures:
        logger.warning(f"{result.name}: failed {', '.join(result.failures)}")
    return result


def run_battery(name: str = "default", config: Optional[dict] = None, parallel: Optional[int] = None) -> BatteryReport:
    if name not in BATTERIES:
        raise BadParameter(f"unknown battery {name!r}; choose one of {', '.join(BATTERIES)}")
    config = {**DEFAULT_CONFIG, **(config or {})}
    workers = max(1, int(parallel)) if parallel else resolve_threads(config.get("parallel"))
    entries = BATTERIES[name]()

    async def process_battery() -> List[TheoryResult]:
        sem = asyncio.Semaphore(workers)

        async def worker(index: int, family: str, params: Dict[str, int]) -> TheoryResult:
            async with sem:
                return await asyncio.to_thread(run_theory, index, family, params, config)

        tasks = [worker(i, family, params) for i, (family, params) in enumerate(entries)]
        results = []
        for f in tqdm.as_completed(tasks, desc=f"Battery {name}", disable=None):
            results.append(await f)
        return results

    results = asyncio.run(process_battery())
    results.sort(key=lambda r: r.index)
    report = BatteryReport(name, results)
    logger.info(f"Battery {name}: {len(results) - len(report.failed)}/{len(results)} theories passed")
    return report
