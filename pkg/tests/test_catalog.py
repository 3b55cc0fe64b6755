import math
from math import gcd

import numpy as np
import pytest

from superfourier.arith import divisors, mobius, phi, primitive_root, primitive_root_mod_p2
from superfourier.catalog import (
    FAMILIES,
    build_named,
    even_function_eval,
    even_function_expand,
    even_function_expand_direct,
    gauss_periods,
    gauss_sum,
    heilbronn_sum,
    kloosterman_sum,
    quadratic_periods_closed_form,
    ramanujan_sum,
    sum_rows,
    symmetric_uncertainty_constant,
    uncertainty_grid,
    von_sterneck,
)
from superfourier.errors import ArithmeticOverflow, BadParameter, IncompleteDivisorData
from superfourier.groups import Symmetry
from superfourier.table import build_table
from superfourier.transform import uncertainty_lhs

# rows d = 1..12, columns n = 1..12
TABLE_ONE = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
    [1, 2, 5, 8, 13, 18, 25, 32, 41, 50, 61, 72],
    [1, 3, 5, 11, 21, 36, 58, 86, 122, 167, 222, 288],
    [1, 3, 7, 11, 27, 54, 101, 171, 274, 417, 611, 864],
    [1, 4, 9, 18, 27, 65, 141, 274, 493, 834, 1343, 2074],
    [1, 4, 9, 23, 44, 65, 164, 365, 739, 1389, 2461, 4148],
    [1, 4, 11, 27, 63, 112, 164, 417, 950, 1985, 3867, 7110],
    [1, 4, 12, 27, 78, 167, 286, 417, 1068, 2481, 5317, 10665],
    [1, 5, 12, 35, 87, 223, 445, 740, 1068, 2756, 6498, 14219],
    [1, 5, 15, 42, 87, 267, 623, 1184, 1922, 2756, 7148, 17063],
    [1, 5, 16, 46, 118, 291, 793, 1722, 3145, 5011, 7148, 18614],
    [1, 5, 16, 46, 147, 291, 925, 2296, 4717, 8351, 13105, 18614],
]


# --- Builders ---

@pytest.mark.parametrize("name, params, count", [
    ("max-collapse", {"n": 5, "d": 2}, 2),
    ("dft", {"n": 9}, 9),
    ("dct", {"n": 9}, 5),
    ("dct", {"n": 10}, 6),
    ("gauss", {"p": 13, "k": 4}, 5),
    ("kloosterman", {"p": 7}, 9),
    ("heilbronn", {"p": 5}, 7),
    ("ramanujan", {"n": 36}, 9),
    ("symmetric", {"n": 4, "d": 3}, 20),
    ("jsym-triangular", {"p": 7}, 3),
])
def test_class_counts(theory_factory, name, params, count):
    assert theory_factory(name, **params).count == count


def test_declared_symmetry():
    for name, (builder, required, optional) in FAMILIES.items():
        params = {"n": 5, "d": 2, "p": 5, "k": 2}
        theory = build_named(name, **params)
        expected = Symmetry.J_SYMMETRIC if name == "jsym-triangular" else Symmetry.SYMMETRIC
        assert theory.symmetry is expected
        assert theory.params["family"] == name


def test_gauss_5_2(table_factory):
    table = table_factory("gauss", p=5, k=2)
    theory = table.theory
    assert [sorted(v.coords[0] for v in theory.y.members(i)) for i in range(3)] == [[0], [1, 4], [2, 3]]
    eta0, eta1 = quadratic_periods_closed_form(5)
    assert np.allclose(table.values[1], [2, eta0, eta1])


def test_kloosterman_orbits(theory_factory):
    p = 7
    theory = theory_factory("kloosterman", p=p)
    assert theory.count == p + 2
    assert sorted(theory.y.sizes.tolist()) == [1] + [p - 1] * (p + 1)


def test_heilbronn_orbits(theory_factory):
    p = 5
    theory = theory_factory("heilbronn", p=p)
    multiples = theory.y.class_of((p,))
    assert sorted(v.coords[0] for v in theory.y.members(multiples)) == [p * i for i in range(1, p)]
    assert theory.count == p + 2


@pytest.mark.parametrize("p", [3, 5, 7])
def test_heilbronn_table_follows_the_primitive_root(table_factory, p):
    table = table_factory("heilbronn", p=p)
    theory = table.theory
    m = p * p
    g = primitive_root_mod_p2(p)
    for i in range(1, p):
        for j in range(1, p):
            a = theory.x.class_of((pow(g, i, m),))
            b = theory.y.class_of((pow(g, j, m),))
            assert table.values[a, b] == pytest.approx(heilbronn_sum(p, pow(g, i + j, m)), abs=1e-9)


@pytest.mark.parametrize("name, params, message", [
    ("gauss", {"p": 9}, "odd prime"),
    ("gauss", {"p": 13, "k": 5}, "divide"),
    ("kloosterman", {"p": 2}, "odd prime"),
    ("max-collapse", {"n": 6, "d": 2}, "prime"),
    ("dft", {"n": 0}, "positive"),
    ("symmetric", {"n": 3}, "--d"),
    ("nope", {}, "unknown theory"),
])
def test_build_named_errors(name, params, message):
    with pytest.raises(BadParameter, match=message):
        build_named(name, **params)


# --- Arithmetic helpers ---

def test_arithmetic_helpers():
    assert [phi(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert all(sum(mobius(d) for d in divisors(n)) == 0 for n in range(2, 200))
    assert mobius(210) == 1 and mobius(2310) == -1
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert primitive_root(13) == 2
    assert primitive_root_mod_p2(5) == 2
    with pytest.raises(BadParameter):
        primitive_root(12)
    with pytest.raises(BadParameter):
        mobius(0)


# --- Ramanujan ---

def test_ramanujan_matches_von_sterneck():
    for n in range(1, 101):
        for x in range(n):
            assert ramanujan_sum(n, x) == von_sterneck(n, x)


def test_ramanujan_examples():
    assert ramanujan_sum(4, 2) == -2
    for n in range(1, 40):
        assert von_sterneck(n, 0) == phi(n)
        assert von_sterneck(n, 1) == mobius(n)


def test_ramanujan_reciprocity_and_gcd_invariance():
    for n in range(1, 101):
        divs = divisors(n)
        for d in divs:
            for e in divs:
                assert von_sterneck(d, n // e) * phi(e) == von_sterneck(e, n // d) * phi(d)
        for x in range(n):
            assert von_sterneck(n, x) == von_sterneck(n, gcd(n, x))


def _gcd_function(n, func):
    return {g: func(g) for g in divisors(n)}


@pytest.mark.parametrize("n", [1, 6, 12, 30])
def test_even_function_basis_elements(n):
    for m in divisors(n):
        alpha = even_function_expand(n, _gcd_function(n, lambda g: von_sterneck(m, g)))
        for d, value in alpha.items():
            assert value == pytest.approx(1.0 if d == m else 0.0, abs=1e-9)


def test_even_function_constant():
    alpha = even_function_expand(12, _gcd_function(12, lambda g: 1))
    assert alpha[1] == pytest.approx(1.0)
    assert all(abs(v) < 1e-9 for d, v in alpha.items() if d != 1)


def test_even_function_gcd_example():
    n = 6
    f = _gcd_function(n, lambda g: g)
    alpha = even_function_expand(n, f)
    direct = even_function_expand_direct(n, f)
    # brute force: solve sum_d alpha(d) c_d(g) = g over the divisors g
    divs = divisors(n)
    a = np.array([[von_sterneck(d, g) for d in divs] for g in divs], dtype=float)
    solved = np.linalg.solve(a, np.array(divs, dtype=float))
    for d, value in zip(divs, solved):
        assert alpha[d] == pytest.approx(value, abs=1e-9)
        assert direct[d] == pytest.approx(value, abs=1e-9)
    for x in range(n):
        assert even_function_eval(n, alpha, x) == pytest.approx(gcd(x, n), abs=1e-9)


def test_even_function_needs_every_divisor():
    with pytest.raises(IncompleteDivisorData):
        even_function_expand(6, {1: 1, 2: 1, 3: 1})


# --- Kloosterman, Heilbronn, Gauss ---

@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_kloosterman_sums(p):
    assert kloosterman_sum(p, 1, 0) == pytest.approx(-1)
    for a in range(1, p):
        for b in range(p):
            assert kloosterman_sum(p, a, b) == pytest.approx(kloosterman_sum(p, 1, a * b), abs=1e-9)


def test_kloosterman_small_example():
    assert kloosterman_sum(3, 1, 1) == pytest.approx(-1)


def test_heilbronn_sum_at_zero():
    assert heilbronn_sum(5, 0) == pytest.approx(4)


@pytest.mark.parametrize("p", [5, 7, 13])
def test_gauss_sum_magnitude(p):
    for a in range(2 * p):
        expected = p if a % p == 0 else math.sqrt(p)
        assert abs(gauss_sum(p, a)) == pytest.approx(expected)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_quadratic_periods(p):
    assert gauss_periods(p, 2) == pytest.approx(list(quadratic_periods_closed_form(p)))


@pytest.mark.parametrize("p, k", [(13, 3), (13, 4), (19, 6)])
def test_periods_sum_to_minus_one(p, k):
    assert sum(gauss_periods(p, k)) == pytest.approx(-1)


# --- Symmetric uncertainty constants ---

def test_table_one():
    assert uncertainty_grid(12, 12) == TABLE_ONE


@pytest.mark.parametrize("n, d, expected", [(3, 2, 5), (12, 5, 2074), (12, 12, 18614)])
def test_symmetric_uncertainty_constant(n, d, expected):
    assert symmetric_uncertainty_constant(n, d) == expected


@pytest.mark.parametrize("n, d", [(2, 4), (3, 3), (4, 4), (5, 3), (6, 2), (2, 7), (3, 5)])
def test_constant_matches_the_partition(theory_factory, n, d):
    theory = theory_factory("symmetric", n=n, d=d)
    assert uncertainty_lhs(theory) == symmetric_uncertainty_constant(n, d)


def test_overflow_guard():
    with pytest.raises(ArithmeticOverflow):
        symmetric_uncertainty_constant(2, 35)
    with pytest.raises(ArithmeticOverflow):
        symmetric_uncertainty_constant(100, 30)


# --- Sum reports ---

def test_sum_rows():
    rows = sum_rows("ramanujan", n=12)
    assert len(rows) == 12 and all(r["match"] for r in rows)
    rows = sum_rows("kloosterman", p=5)
    assert len(rows) == 4 * 5 and all(r["match"] for r in rows)
    rows = sum_rows("gauss", p=13, k=2)
    assert all(r["match"] for r in rows if "match" in r)
    assert len(sum_rows("heilbronn", p=3)) == 9
    with pytest.raises(BadParameter):
        sum_rows("fourier", p=3)


def test_table_entries_are_sums(table_factory):
    table = table_factory("kloosterman", p=7)
    theory = table.theory
    i = theory.x.class_of((1, 3))
    j = theory.y.class_of((1, 2))
    assert table.values[i, j] == pytest.approx(kloosterman_sum(7, 1, 6))
    assert np.allclose(build_table(theory).values, table.values)
