import json
import logging
import sys
from enum import Enum
from pathlib import Path
from typing import List, Optional

import typer

try:  # newer typer releases vendor their own click
    from typer import _click as click
except ImportError:
    import click
from typing_extensions import Annotated

from . import __version__
from .algebra import build_T, compute_structure_constants, eigenvalues, verify_algebra
from .battery import BATTERIES, run_battery
from .catalog import build_named, sum_rows, uncertainty_grid
from .config import APP_NAME, TOLERANCE_SCALE, load_config, save_default_config
from .errors import BadParameter, ParseError, SuperFourierError
from .export import dump_json, records_frame, save_frame, table_payload, write_table
from .groups import Symmetry, closure, enumerate_GL, enumerate_SL, permutation_group
from .modular import parse_matrix, parse_matrix_list, parse_vector
from .plot import render_supercharacter_plot
from .table import build_U, build_table, verify_unitary
from .theory import Theory, build_theory
from .transform import (
    DOMAIN_X,
    DOMAIN_Y,
    check_uncertainty,
    forward,
    function_from_pairs,
    inverse,
    norms,
    uncertainty_lhs,
)
from .utils import setup_logging, status, warn

logger = logging.getLogger(__name__)

app = typer.Typer(help="Supercharacter theories, super-Fourier transforms and exponential sums", no_args_is_help=True)

VERIFICATION_FAILED = 2


class TableFormat(str, Enum):
    json = "json"
    csv = "csv"
    excel = "excel"


class SumKind(str, Enum):
    ramanujan = "ramanujan"
    kloosterman = "kloosterman"
    heilbronn = "heilbronn"
    gauss = "gauss"


# --- Shared options ---

TheoryOpt = Annotated[Optional[str], typer.Option("--theory", help="Catalog theory: max-collapse, dft, dct, gauss, kloosterman, heilbronn, ramanujan, symmetric, jsym-triangular")]
GroupOpt = Annotated[Optional[str], typer.Option("--group", help="gl | sl-like | perm | catalog:<name>")]
NOpt = Annotated[Optional[int], typer.Option("--n", help="Modulus n")]
DOpt = Annotated[Optional[int], typer.Option("--d", help="Dimension d")]
POpt = Annotated[Optional[int], typer.Option("--p", help="Prime p")]
KOpt = Annotated[Optional[int], typer.Option("--k", help="Gauss period index k, a divisor of p-1")]
GeneratorsOpt = Annotated[Optional[str], typer.Option("--generators", help='Generators as "1,1;0,1|2,0;0,1"; needs --n')]
JOpt = Annotated[Optional[str], typer.Option("--j", help='Symmetric matrix J for a J-symmetric group, e.g. "0,1;1,0"')]
FormatOpt = Annotated[TableFormat, typer.Option("--format", help="Output format: json, csv, excel")]
OutOpt = Annotated[Optional[Path], typer.Option("--out", help="Output file (stdout when omitted)")]
ToleranceOpt = Annotated[Optional[float], typer.Option("--tolerance", help="Tolerance scale; tau = scale * max(1, N)")]


@app.callback()
def main_callback(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging")] = False,
):
    """Build supercharacter tables, transforms and the superclass algebra over (Z/nZ)^d."""
    setup_logging(verbose)


def resolve_theory(
    config: dict,
    theory: Optional[str] = None,
    group: Optional[str] = None,
    n: Optional[int] = None,
    d: Optional[int] = None,
    p: Optional[int] = None,
    k: Optional[int] = None,
    generators: Optional[str] = None,
    j: Optional[str] = None,
) -> Theory:
    """Turn the theory-selection flags into a Theory."""
    if group and group.startswith("catalog:"):
        if theory:
            raise BadParameter("give either --theory or --group catalog:<name>, not both")
        theory = group.split(":", 1)[1]
        group = None
    if theory:
        return build_named(theory, n=n, d=d, p=p, k=k)

    if n is None:
        raise BadParameter("--n is required unless --theory names a catalog theory")
    vector_cap = int(config.get("vector_cap"))
    if generators:
        if group:
            raise BadParameter("give either --generators or --group, not both")
        gens = parse_matrix_list(generators, n)
        j_matrix = parse_matrix(j, n) if j else None
        g = closure(gens, cap=int(config.get("closure_cap")), j=j_matrix)
        if d is not None and g.dim != d:
            raise BadParameter(f"--d {d} does not match {g.dim}x{g.dim} generators")
        return build_theory(g, params={"n": n, "d": g.dim}, cap=vector_cap)

    if d is None:
        raise BadParameter("--d is required with --group")
    if group == "gl":
        g = enumerate_GL(n, d, cap=int(config.get("gl_cap")))
    elif group == "sl-like":
        g = enumerate_SL(n, d, cap=int(config.get("gl_cap")))
    elif group == "perm":
        g = permutation_group(n, d)
    else:
        raise BadParameter("choose a theory with --theory, --generators or --group gl|sl-like|perm|catalog:<name>")
    return build_theory(g, params={"n": n, "d": d}, cap=vector_cap)


def _scale(config: dict, override: Optional[float]) -> float:
    scale = override if override is not None else config.get("tolerance", TOLERANCE_SCALE)
    if scale <= 0:
        raise BadParameter("--tolerance must be positive")
    return float(scale)


def _fail(message: str):
    status(message, ok=False)
    raise typer.Exit(code=VERIFICATION_FAILED)


# --- Commands ---

@app.command()
def partition(
    theory: TheoryOpt = None,
    group: GroupOpt = None,
    n: NOpt = None,
    d: DOpt = None,
    p: POpt = None,
    k: KOpt = None,
    generators: GeneratorsOpt = None,
    j: JOpt = None,
    out: OutOpt = None,
):
    """Print the superclass partition (and the character classes when they differ) as JSON."""
    config = load_config()
    th = resolve_theory(config, theory, group, n, d, p, k, generators, j)
    payload = {"theory": th.describe(), "superclasses": th.y.to_dict()}
    if th.x is not th.y:
        payload["characters"] = th.x.to_dict()
    dump_json(payload, out)


@app.command()
def table(
    theory: TheoryOpt = None,
    group: GroupOpt = None,
    n: NOpt = None,
    d: DOpt = None,
    p: POpt = None,
    k: KOpt = None,
    generators: GeneratorsOpt = None,
    j: JOpt = None,
    format: FormatOpt = TableFormat.csv,
    out: OutOpt = None,
    tolerance: ToleranceOpt = None,
    with_u: Annotated[bool, typer.Option("--with-u", help="Also emit U and its unitarity residuals (json only)")] = False,
):
    """Supercharacter table: a rep row, a '#' size row, then one row per supercharacter."""
    config = load_config()
    th = resolve_theory(config, theory, group, n, d, p, k, generators, j)
    tab = build_table(th)
    if format is TableFormat.json and with_u:
        u = build_U(tab, _scale(config, tolerance))
        payload = table_payload(tab)
        payload["U"] = u.entries
        payload["permutation"] = [int(x) for x in u.permutation]
        check = verify_unitary(u)
        payload["unitary"] = check.as_dict()
        dump_json(payload, out)
        if not check.passed:
            _fail(f"{th.name}: U fails its unitarity identities")
        return
    write_table(tab, format.value, out)


@app.command()
def transform(
    input: Annotated[Path, typer.Option("--input", help="JSON file of [re, im] pairs, one per class; '-' reads stdin")] = Path("-"),
    theory: TheoryOpt = None,
    group: GroupOpt = None,
    n: NOpt = None,
    d: DOpt = None,
    p: POpt = None,
    k: KOpt = None,
    generators: GeneratorsOpt = None,
    j: JOpt = None,
    inverse_: Annotated[bool, typer.Option("--inverse", help="Treat the input as a transform and invert it")] = False,
    check_uncertainty_: Annotated[bool, typer.Option("--check-uncertainty", help="Report the support-size bound ceil(n^d / M^2) and the class-count statistic ceil(n^d / M)")] = False,
    threshold: Annotated[Optional[float], typer.Option("--threshold", help="Support threshold on |f|")] = None,
    out: OutOpt = None,
):
    """Super-Fourier transform of a superclass function given as JSON."""
    config = load_config()
    th = resolve_theory(config, theory, group, n, d, p, k, generators, j)
    text = sys.stdin.read() if str(input) == "-" else Path(input).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"--input is not valid JSON: {e}") from e
    pairs = data.get("values") if isinstance(data, dict) else data

    tab = build_table(th)
    if inverse_:
        fh = function_from_pairs(th, pairs, DOMAIN_X)
        result = inverse(tab, fh)
        source = fh
    else:
        source = function_from_pairs(th, pairs, DOMAIN_Y)
        result = forward(tab, source)

    payload = {
        "theory": th.describe(),
        "domain": result.domain,
        "values": result.to_pairs(),
        "norm_in": norms(source).l2,
        "norm_out": norms(result).l2,
    }
    if check_uncertainty_:
        f = result if inverse_ else source
        check = check_uncertainty(tab, f, threshold if threshold is not None else config.get("support_threshold"))
        payload["uncertainty"] = check.as_dict()
        if not check.holds and th.symmetry is not Symmetry.ASYMMETRIC:
            dump_json(payload, out)
            _fail(f"uncertainty bound fails: {check.product} < {check.bound}")
    dump_json(payload, out)


@app.command()
def algebra(
    theory: TheoryOpt = None,
    group: GroupOpt = None,
    n: NOpt = None,
    d: DOpt = None,
    p: POpt = None,
    k: KOpt = None,
    generators: GeneratorsOpt = None,
    j: JOpt = None,
    format: FormatOpt = TableFormat.json,
    out: OutOpt = None,
    tolerance: ToleranceOpt = None,
):
    """Structure constants c_ijk, the matrices T_i and their eigenvalues."""
    config = load_config()
    scale = _scale(config, tolerance)
    th = resolve_theory(config, theory, group, n, d, p, k, generators, j)
    tab = build_table(th)
    u = build_U(tab, scale)
    sc = compute_structure_constants(th)
    fam = build_T(sc, tab)
    report = verify_algebra(fam, u, sc, scale)

    if format is TableFormat.json:
        dump_json({
            "theory": th.describe(),
            "c": sc.c,
            "T": fam.t,
            "eigenvalues": [eigenvalues(fam, u, i) for i in range(fam.count)],
            "report": report.as_dict(),
        }, out)
    else:
        records = []
        for i in range(fam.count):
            for row, values in enumerate(fam.t[i]):
                records.append({"T": i + 1, "row": row + 1,
                                **{f"X{col + 1}": complex(v) for col, v in enumerate(values)}})
        save_frame(records_frame(records), format.value, out)
    if not report.passed:
        _fail(f"{th.name}: superclass algebra identities fail")
    status(f"{th.name}: {fam.count} T-matrices, algebra identities hold")


@app.command()
def sums(
    kind: Annotated[SumKind, typer.Argument(help="ramanujan | kloosterman | heilbronn | gauss")],
    p: POpt = None,
    n: NOpt = None,
    k: KOpt = None,
    format: FormatOpt = TableFormat.csv,
    out: OutOpt = None,
):
    """Values of a family of exponential sums next to their oracle."""
    rows = sum_rows(kind.value, p=p, n=n, k=k)
    if format is TableFormat.json:
        dump_json({"family": kind.value, "rows": rows}, out)
    else:
        save_frame(records_frame(rows), format.value, out)
    mismatches = [r for r in rows if r.get("match") is False]
    if mismatches:
        _fail(f"{len(mismatches)} {kind.value} value(s) disagree with the oracle")


@app.command("uncertainty-grid")
def uncertainty_grid_cmd(
    max_n: Annotated[int, typer.Option("--max-n", help="Largest n (columns)")] = 12,
    max_d: Annotated[int, typer.Option("--max-d", help="Largest d (rows)")] = 12,
    cross_check: Annotated[int, typer.Option("--cross-check", help="Recompute cells with n^d up to this bound from the orbit partition")] = 0,
    format: FormatOpt = TableFormat.csv,
    out: OutOpt = None,
):
    """Symmetric-group uncertainty constants, rows d and columns n."""
    if max_n < 1 or max_d < 1:
        raise BadParameter("--max-n and --max-d must be positive")
    grid = uncertainty_grid(max_n, max_d)
    bad = []
    if cross_check:
        for d in range(1, max_d + 1):
            for n in range(1, max_n + 1):
                if n ** d <= cross_check:
                    lhs = uncertainty_lhs(build_named("symmetric", n=n, d=d))
                    if lhs != grid[d - 1][n - 1]:
                        bad.append((n, d))
                        logger.error(f"n={n}, d={d}: closed form {grid[d - 1][n - 1]}, partition {lhs}")
    if format is TableFormat.json:
        dump_json({"max_n": max_n, "max_d": max_d, "rows": grid}, out)
    else:
        records = [{"d\\n": d, **{str(n): grid[d - 1][n - 1] for n in range(1, max_n + 1)}}
                   for d in range(1, max_d + 1)]
        save_frame(records_frame(records), format.value, out)
    if bad:
        _fail(f"{len(bad)} grid cell(s) disagree with the orbit partition")


@app.command()
def plot(
    out: Annotated[Path, typer.Option("--out", help="SVG file to write")],
    theory: TheoryOpt = None,
    group: GroupOpt = None,
    n: NOpt = None,
    d: DOpt = None,
    p: POpt = None,
    k: KOpt = None,
    generators: GeneratorsOpt = None,
    j: JOpt = None,
    x: Annotated[Optional[str], typer.Option("--x", help='Vector x, e.g. "0,0,0,1,1"; plots the supercharacter of its class')] = None,
    class_index: Annotated[Optional[int], typer.Option("--class", help="Class index instead of --x")] = None,
):
    """Scatter the values of one supercharacter in the complex plane."""
    if (x is None) == (class_index is None):
        raise BadParameter("give exactly one of --x and --class")
    config = load_config()
    th = resolve_theory(config, theory, group, n, d, p, k, generators, j)
    if x is not None:
        target = parse_vector(x, th.n)
    else:
        if not 0 <= class_index < th.count:
            raise BadParameter(f"--class must lie in [0, {th.count})")
        target = class_index
    summary = render_supercharacter_plot(th, target, out, cap=int(config.get("vector_cap")))
    status(f"{summary.count} points, max modulus {summary.max_modulus:.6f} <= {summary.radius}, saved {out}")


@app.command()
def verify(
    battery: Annotated[str, typer.Option("--battery", help=f"Battery: {', '.join(BATTERIES)}")] = "default",
    tolerance: ToleranceOpt = None,
    seed: Annotated[Optional[int], typer.Option("--seed", help="Seed for the random test functions")] = None,
    parallel: Annotated[Optional[int], typer.Option("--parallel", help="Worker threads")] = None,
    format: FormatOpt = TableFormat.csv,
    out: OutOpt = None,
):
    """Run the unitarity, transform and algebra checks over a battery of theories."""
    config = load_config()
    config["tolerance"] = _scale(config, tolerance)
    if seed is not None:
        config["seed"] = seed
    report = run_battery(battery, config, parallel)
    if format is TableFormat.json:
        dump_json(report.as_dict(), out)
    else:
        save_frame(records_frame(r.summary() for r in report.results), format.value, out)
    for r in report.failed:
        warn(f"{r.name}: {r.summary()['failures']}")
    if not report.passed:
        _fail(f"{len(report.failed)}/{len(report.results)} theories failed")
    status(f"All {len(report.results)} theories passed")


@app.command()
def setup_config():
    """Create a default configuration file."""
    path = save_default_config()
    print(f"Config file: {path}")


def run(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return its exit code: 0 ok, 1 usage or input error, 2 failed verification."""
    args = list(sys.argv[1:] if argv is None else argv)
    if args in (["--version"], ["-V"]):
        print(f"{APP_NAME} {__version__}")
        return 0
    try:
        rv = app(args=args, prog_name=APP_NAME, standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        return 1
    except click.exceptions.ClickException as e:
        e.show()
        return 1
    except click.exceptions.Abort:
        print("Aborted.", file=sys.stderr)
        return 1
    except SuperFourierError as e:
        status(f"{type(e).__name__}: {e}", ok=False)
        return 1
    return rv if isinstance(rv, int) else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
