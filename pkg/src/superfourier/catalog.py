"""Named supercharacter theories and closed-form oracles for their exponential sums.

Families: max-collapse, dft, dct, gauss, kloosterman, heilbronn, ramanujan,
symmetric and jsym-triangular. Each builder returns a `Theory` whose `params`
carry the family name and its parameters; `closed_form_table` reproduces the
known tables for every family that has one.
"""
import logging
import math
from math import factorial, gcd
from typing import Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from .arith import (
    divisors,
    is_prime,
    mobius,
    phi,
    primitive_root,
    require_odd_prime,
)
from .config import FACTORIAL_CAP, IMAG_TOLERANCE
from .errors import (
    ArithmeticOverflow,
    BadParameter,
    IncompleteDivisorData,
    InternalInconsistency,
)
from .groups import MatrixGroup, Symmetry, enumerate_GL, permutation_group
from .modular import GMatrix
from .table import build_table, roots_of_unity
from .theory import Theory, build_theory
from .transform import SuperclassFunction, forward

logger = logging.getLogger(__name__)

# A named theory is a Theory whose params carry "family" and the builder arguments.
NamedTheory = Theory

SWAP = ((0, 1), (1, 0))


def _named(group: MatrixGroup, family: str, expected: Symmetry, **params) -> Theory:
    if group.symmetry is not expected:
        raise InternalInconsistency(f"{family}: expected a {expected.value} group, got {group.symmetry.value}")
    label = family + "(" + ",".join(f"{k}={v}" for k, v in params.items()) + ")"
    return build_theory(group, label, {"family": family, **params})


def _require_positive(**values):
    for name, value in values.items():
        if value is None or int(value) < 1:
            raise BadParameter(f"{name} must be a positive integer, got {value}")


def _scalar_group(n: int, units, label: str) -> MatrixGroup:
    return MatrixGroup.from_elements([GMatrix.scalar(n, u) for u in units], n, 1, label=label)


# --- Builders ---

def max_collapse(n: int, d: int) -> Theory:
    """GL_d(Z/nZ): two superclasses {0} and everything else (n prime)."""
    _require_positive(n=n, d=d)
    if not is_prime(n):
        raise BadParameter(f"max-collapse needs a prime n (GL_d is transitive on nonzero vectors only then), got {n}")
    return _named(enumerate_GL(n, d), "max-collapse", Symmetry.SYMMETRIC, n=n, d=d)


def dft(n: int) -> Theory:
    """Trivial group on Z/nZ; U is the unitary DFT matrix."""
    _require_positive(n=n)
    return _named(_scalar_group(n, [1], f"trivial(Z/{n}Z)"), "dft", Symmetry.SYMMETRIC, n=n)


def dct(n: int) -> Theory:
    """Gamma = {1, -1} on Z/nZ; U is a DCT matrix."""
    _require_positive(n=n)
    return _named(_scalar_group(n, [1, -1], f"pm1(Z/{n}Z)"), "dct", Symmetry.SYMMETRIC, n=n)


def gauss(p: int, k: int = 2) -> Theory:
    """Gamma = <g^k> in (Z/pZ)^x; the k nontrivial classes are the cosets g^j Gamma."""
    require_odd_prime(p)
    _require_positive(k=k)
    if (p - 1) % k:
        raise BadParameter(f"k must divide p - 1, got k={k}, p={p}")
    g = primitive_root(p)
    h = pow(g, k, p)
    units = sorted({pow(h, m, p) for m in range((p - 1) // k)})
    return _named(_scalar_group(p, units, f"<g^{k}> mod {p}"), "gauss", Symmetry.SYMMETRIC, p=p, k=k)


def kloosterman(p: int) -> Theory:
    """Gamma = {diag(u, u^-1)} acting on (Z/pZ)^2."""
    require_odd_prime(p)
    elements = [GMatrix.diagonal(p, (u, pow(u, -1, p))) for u in range(1, p)]
    group = MatrixGroup.from_elements(elements, p, 2, label=f"diag(u,u^-1) mod {p}")
    return _named(group, "kloosterman", Symmetry.SYMMETRIC, p=p)


def heilbronn(p: int) -> Theory:
    """Gamma = {l^p mod p^2 : 1 <= l < p} acting on Z/p^2Z."""
    require_odd_prime(p)
    m = p * p
    units = sorted({pow(ell, p, m) for ell in range(1, p)})
    return _named(_scalar_group(m, units, f"p-th powers mod {m}"), "heilbronn", Symmetry.SYMMETRIC, p=p)


def ramanujan(n: int) -> Theory:
    """Gamma = (Z/nZ)^x; the classes are {x : gcd(x, n) = n/d} for d | n."""
    _require_positive(n=n)
    units = [u for u in range(max(1, n)) if gcd(u, n) == 1]
    return _named(_scalar_group(n, units, f"(Z/{n}Z)^x"), "ramanujan", Symmetry.SYMMETRIC, n=n)


def symmetric(n: int, d: int) -> Theory:
    """S_d permuting the coordinates of (Z/nZ)^d."""
    _require_positive(n=n, d=d)
    return _named(permutation_group(n, d), "symmetric", Symmetry.SYMMETRIC, n=n, d=d)


def jsym_triangular(p: int) -> Theory:
    """Gamma = {[[u, a], [0, u]]} on (Z/pZ)^2 with J the coordinate swap."""
    require_odd_prime(p)
    elements = [GMatrix.of(p, [[u, a], [0, u]]) for u in range(1, p) for a in range(p)]
    group = MatrixGroup.from_elements(elements, p, 2, label=f"upper unipotent-scalar mod {p}", j=GMatrix.of(p, SWAP))
    return _named(group, "jsym-triangular", Symmetry.J_SYMMETRIC, p=p)


FAMILIES: Dict[str, Tuple[Callable[..., Theory], Tuple[str, ...], Tuple[str, ...]]] = {
    "max-collapse": (max_collapse, ("n", "d"), ()),
    "dft": (dft, ("n",), ()),
    "dct": (dct, ("n",), ()),
    "gauss": (gauss, ("p",), ("k",)),
    "kloosterman": (kloosterman, ("p",), ()),
    "heilbronn": (heilbronn, ("p",), ()),
    "ramanujan": (ramanujan, ("n",), ()),
    "symmetric": (symmetric, ("n", "d"), ()),
    "jsym-triangular": (jsym_triangular, ("p",), ()),
}


def build_named(name: str, **params) -> Theory:
    """Build a catalog theory; unused or None-valued params are ignored."""
    if name not in FAMILIES:
        raise BadParameter(f"unknown theory {name!r}; choose one of {', '.join(FAMILIES)}")
    builder, required, optional = FAMILIES[name]
    missing = [key for key in required if params.get(key) is None]
    if missing:
        raise BadParameter(f"theory {name!r} needs --{' --'.join(missing)}")
    kwargs = {key: int(params[key]) for key in required + optional if params.get(key) is not None}
    return builder(**kwargs)


# --- Oracles ---

def ramanujan_sum(n: int, x: int) -> int:
    """c_n(x) by direct summation over units j mod n, rounded to the nearest integer."""
    _require_positive(n=n)
    roots = roots_of_unity(n)
    residues = [(j * x) % n for j in range(1, n + 1) if gcd(j, n) == 1]
    total = roots[residues].sum()
    if abs(total.imag) >= IMAG_TOLERANCE:
        raise InternalInconsistency(f"c_{n}({x}) has imaginary part {total.imag:.3e}")
    return int(round(total.real))


def von_sterneck(n: int, x: int) -> int:
    """c_n(x) = mu(n/(n,x)) phi(n) / phi(n/(n,x)), exact."""
    _require_positive(n=n)
    m = n // gcd(n, x)
    return mobius(m) * phi(n) // phi(m)


def kloosterman_sum(p: int, a: int, b: int) -> float:
    require_odd_prime(p)
    roots = roots_of_unity(p)
    residues = [(a * ell + b * pow(ell, -1, p)) % p for ell in range(1, p)]
    total = roots[residues].sum()
    if abs(total.imag) >= IMAG_TOLERANCE:
        raise InternalInconsistency(f"K({a},{b}) mod {p} has imaginary part {total.imag:.3e}")
    return float(total.real)


def heilbronn_sum(p: int, a: int) -> complex:
    require_odd_prime(p)
    m = p * p
    roots = roots_of_unity(m)
    return complex(roots[[(a * pow(ell, p, m)) % m for ell in range(1, p)]].sum())


def gauss_periods(p: int, k: int = 2) -> List[complex]:
    """eta_j = sum over h in <g^k> of e(g^j h / p), j = 0..k-1, g the smallest primitive root."""
    require_odd_prime(p)
    if (p - 1) % k:
        raise BadParameter(f"k must divide p - 1, got k={k}, p={p}")
    g = primitive_root(p)
    h = pow(g, k, p)
    subgroup = [pow(h, m, p) for m in range((p - 1) // k)]
    roots = roots_of_unity(p)
    return [complex(roots[[(pow(g, j, p) * s) % p for s in subgroup]].sum()) for j in range(k)]


def gauss_sum(p: int, a: int) -> complex:
    """G_p(a) = sum over m mod p of e(a m^2 / p)."""
    require_odd_prime(p)
    roots = roots_of_unity(p)
    return complex(roots[[(a * m * m) % p for m in range(p)]].sum())


def quadratic_periods_closed_form(p: int) -> Tuple[complex, complex]:
    """(eta_0, eta_1) = ((-1 + s) / 2, (-1 - s) / 2), s = sqrt(p) or i sqrt(p) as p = 1 or 3 mod 4."""
    require_odd_prime(p)
    s = math.sqrt(p) if p % 4 == 1 else 1j * math.sqrt(p)
    return complex((-1 + s) / 2), complex((-1 - s) / 2)


def symmetric_uncertainty_constant(n: int, d: int) -> int:
    """ceil(n^d (q!)^n (q+1)^r / d!) with d = q n + r, in exact integers."""
    _require_positive(n=n, d=d)
    if d > FACTORIAL_CAP:
        raise ArithmeticOverflow(f"d = {d} exceeds the factorial guard {FACTORIAL_CAP}")
    q, r = divmod(d, n)
    numerator = n ** d * factorial(q) ** n * (q + 1) ** r
    if numerator >= 2 ** 127:
        raise ArithmeticOverflow(f"n^d (q!)^n (q+1)^r overflows 128 bits for n={n}, d={d}")
    return -(-numerator // factorial(d))


def uncertainty_grid(max_n: int, max_d: int) -> List[List[int]]:
    """Rows d = 1..max_d, columns n = 1..max_n."""
    return [[symmetric_uncertainty_constant(n, d) for n in range(1, max_n + 1)] for d in range(1, max_d + 1)]


def _divisor_of_class(theory: Theory, i: int) -> int:
    # Class i of the Ramanujan theory is {x : (x, n) = n/d}.
    n = theory.n
    return n // gcd(int(theory.x.rep_array()[i][0]), n)


def even_function_expand(n: int, f: Mapping[int, complex]) -> Dict[int, complex]:
    """Coefficients alpha(d), d | n, with f(x) = sum_d alpha(d) c_d(x).

    `f` maps each divisor g of n to the value of f at any x with (x, n) = g.
    The coefficients come from the super-Fourier transform on ramanujan(n):
    alpha(d_i) = f_hat(X_i) / sqrt(n).
    """
    theory = ramanujan(n)
    missing = [g for g in divisors(n) if g not in f]
    if missing:
        raise IncompleteDivisorData(f"f is missing values at divisors {missing} of {n}")
    reps = theory.y.rep_array()[:, 0]
    values = np.array([f[gcd(int(r), n)] for r in reps], dtype=complex)
    fh = forward(build_table(theory), SuperclassFunction(theory, values))
    return {_divisor_of_class(theory, i): complex(fh.values[i] / math.sqrt(n)) for i in range(theory.count)}


def even_function_expand_direct(n: int, f: Mapping[int, complex]) -> Dict[int, complex]:
    """alpha(d) = (1/n) sum over k | n of f(n/k) c_k(n/d)."""
    missing = [g for g in divisors(n) if g not in f]
    if missing:
        raise IncompleteDivisorData(f"f is missing values at divisors {missing} of {n}")
    return {
        d: sum(complex(f[n // k]) * von_sterneck(k, n // d) for k in divisors(n)) / n
        for d in divisors(n)
    }


def even_function_eval(n: int, alpha: Mapping[int, complex], x: int) -> complex:
    """sum over d | n of alpha(d) c_d(x)."""
    return sum(complex(alpha.get(d, 0)) * von_sterneck(d, x) for d in divisors(n))


# --- Closed-form tables ---

def _dlog_table(g: int, m: int, order: int) -> Dict[int, int]:
    return {pow(g, e, m): e for e in range(order)}


def _gauss_table(theory: Theory) -> np.ndarray:
    p, k = theory.params["p"], theory.params["k"]
    periods = gauss_periods(p, k)
    dlog = _dlog_table(primitive_root(p), p, p - 1)
    reps = theory.x.rep_array()[:, 0]
    count = theory.count
    size = (p - 1) // k
    out = np.empty((count, count), dtype=complex)
    for i, ri in enumerate(reps):
        for j, rj in enumerate(reps):
            if ri == 0:
                out[i, j] = 1
            elif rj == 0:
                out[i, j] = size
            else:
                out[i, j] = periods[(dlog[int(ri)] + dlog[int(rj)]) % k]
    return out


def _kloosterman_table(theory: Theory) -> np.ndarray:
    p = theory.params["p"]
    reps = [tuple(int(c) for c in r) for r in theory.x.rep_array()]

    def entry(x, y):
        if x == (0, 0):
            return 1
        if y == (0, 0):
            return p - 1
        if x[0] == 0:   # {(0, u)}
            return p - 1 if y[1] == 0 else -1
        if x[1] == 0:   # {(u, 0)}
            return p - 1 if y[0] == 0 else -1
        if y[0] == 0 or y[1] == 0:
            return -1
        # reps are (1, a) and (1, b)
        return kloosterman_sum(p, 1, x[1] * y[1])

    return np.array([[entry(x, y) for y in reps] for x in reps], dtype=complex)


def _heilbronn_table(theory: Theory) -> np.ndarray:
    p = theory.params["p"]
    m = p * p
    reps = theory.x.rep_array()[:, 0]
    out = np.empty((len(reps), len(reps)), dtype=complex)
    for i, ri in enumerate(reps):
        for j, rj in enumerate(reps):
            if ri == 0:
                out[i, j] = 1
            elif rj == 0:
                out[i, j] = p - 1
            elif ri % p == 0:
                out[i, j] = p - 1 if rj % p == 0 else -1
            elif rj % p == 0:
                out[i, j] = -1
            else:
                out[i, j] = heilbronn_sum(p, (int(ri) * int(rj)) % m)
    return out


def _jsym_table(theory: Theory) -> np.ndarray:
    p = theory.params["p"]
    small = p - 1
    expected = {  # by (|X_i|, |Y_j|)
        (1, 1): 1, (1, small): 1, (1, p * small): 1,
        (small, 1): small, (small, small): small, (small, p * small): -1,
        (p * small, 1): p * small, (p * small, small): -p, (p * small, p * small): 0,
    }
    return np.array(
        [[expected[(int(sx), int(sy))] for sy in theory.y.sizes] for sx in theory.x.sizes], dtype=complex
    )


def closed_form_table(theory: Theory) -> Optional[np.ndarray]:
    """Expected sigma_i(Y_j) from closed forms, or None when the family has none."""
    family = theory.params.get("family")
    if family == "max-collapse":
        total = theory.size
        return np.array([[1, 1], [total - 1, -1]], dtype=complex)
    if family == "dft":
        n = theory.n
        idx = np.arange(n)
        return roots_of_unity(n)[np.outer(idx, idx) % n]
    if family == "dct":
        n = theory.n
        reps = theory.x.rep_array()[:, 0]
        roots = roots_of_unity(n)
        return np.array(
            [[roots[(i * j) % n] + (roots[(-i * j) % n] if (2 * i) % n else 0) for j in reps] for i in reps]
        )
    if family == "gauss":
        return _gauss_table(theory)
    if family == "kloosterman":
        return _kloosterman_table(theory)
    if family == "heilbronn":
        return _heilbronn_table(theory)
    if family == "ramanujan":
        n = theory.n
        reps = theory.y.rep_array()[:, 0]
        return np.array(
            [[von_sterneck(_divisor_of_class(theory, i), int(r)) for r in reps] for i in range(theory.count)],
            dtype=complex,
        )
    if family == "jsym-triangular":
        return _jsym_table(theory)
    return None


# --- Sum reports for the CLI ---

def sum_rows(kind: str, p: Optional[int] = None, n: Optional[int] = None, k: Optional[int] = None) -> List[dict]:
    """Values of one family of sums next to their closed form or second evaluation."""
    if kind == "ramanujan":
        _require_positive(n=n)
        return [
            {"n": n, "x": x, "direct": ramanujan_sum(n, x), "von_sterneck": von_sterneck(n, x),
             "match": ramanujan_sum(n, x) == von_sterneck(n, x)}
            for x in range(n)
        ]
    if kind == "kloosterman":
        require_odd_prime(p)
        rows = []
        for a in range(1, p):
            for b in range(p):
                value = kloosterman_sum(p, a, b)
                reduced = kloosterman_sum(p, 1, a * b)
                rows.append({"p": p, "a": a, "b": b, "K": value, "K(1,ab)": reduced,
                             "match": abs(value - reduced) < IMAG_TOLERANCE})
        return rows
    if kind == "heilbronn":
        require_odd_prime(p)
        return [{"p": p, "a": a, "H": heilbronn_sum(p, a)} for a in range(p * p)]
    if kind == "gauss":
        require_odd_prime(p)
        k = k or 2
        periods = gauss_periods(p, k)
        rows = [{"p": p, "k": k, "j": j, "eta": eta} for j, eta in enumerate(periods)]
        if k == 2:
            for row, closed in zip(rows, quadratic_periods_closed_form(p)):
                row["closed_form"] = closed
                row["match"] = abs(row["eta"] - closed) < IMAG_TOLERANCE
        for a in range(p):
            magnitude = abs(gauss_sum(p, a))
            expected = p if a % p == 0 else math.sqrt(p)
            rows.append({"p": p, "a": a, "|G_p(a)|": magnitude, "expected": expected,
                         "match": abs(magnitude - expected) < IMAG_TOLERANCE * p})
        return rows
    raise BadParameter(f"unknown sum family {kind!r}; choose ramanujan, kloosterman, heilbronn or gauss")
