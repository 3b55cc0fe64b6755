import math

import numpy as np
import pytest

from superfourier.catalog import closed_form_table
from superfourier.errors import UnitarityViolation
from superfourier.groups import Symmetry, closure
from superfourier.modular import GMatrix, GVector
from superfourier.table import (
    SupercharacterTable,
    build_U,
    build_table,
    check_table,
    eval_supercharacter,
    eval_supercharacter_stab,
    roots_of_unity,
    verify_unitary,
)
from superfourier.theory import build_theory

THEORIES = [
    ("max-collapse", {"n": 3, "d": 2}),
    ("dft", {"n": 7}),
    ("dct", {"n": 8}),
    ("gauss", {"p": 13, "k": 3}),
    ("kloosterman", {"p": 5}),
    ("heilbronn", {"p": 5}),
    ("ramanujan", {"n": 12}),
    ("symmetric", {"n": 3, "d": 3}),
    ("jsym-triangular", {"p": 5}),
]


@pytest.mark.parametrize("name, params", THEORIES)
def test_table_invariants(table_factory, name, params):
    table = table_factory(name, **params)
    report = check_table(table)
    assert report.passed, report


@pytest.mark.parametrize("name, params", THEORIES)
def test_closed_forms(table_factory, name, params):
    table = table_factory(name, **params)
    expected = closed_form_table(table.theory)
    assert np.allclose(table.values, expected, atol=1e-9)


@pytest.mark.parametrize("name, params", THEORIES)
def test_unitary_identities(unitary_factory, name, params):
    u = unitary_factory(name, **params)
    report = verify_unitary(u)
    assert report.passed
    assert report.unitary_err < 1e-9
    if u.symmetry is not Symmetry.ASYMMETRIC:
        assert report.sym_err < 1e-9


def test_orbit_and_stabilizer_sums_agree(theory_factory):
    theory = theory_factory("kloosterman", p=7)
    v = GVector.of(7, [3, 5])
    for i in range(theory.count):
        assert eval_supercharacter(theory, i, v) == pytest.approx(eval_supercharacter_stab(theory, i, v))


def test_table_matches_pointwise_evaluation(table_factory):
    table = table_factory("symmetric", n=3, d=3)
    theory = table.theory
    for j, v in enumerate(theory.y.reps):
        for i in range(theory.count):
            assert table.values[i, j] == pytest.approx(eval_supercharacter(theory, i, v))


@pytest.mark.parametrize("n", range(1, 17))
def test_dft_U_is_the_unitary_dft(unitary_factory, n):
    u = unitary_factory("dft", n=n)
    idx = np.arange(n)
    expected = np.exp(2j * np.pi * np.outer(idx, idx) / n) / math.sqrt(n)
    assert np.max(np.abs(u.entries - expected)) < 1e-12
    assert np.max(np.abs(u.entries - np.fft.ifft(np.eye(n), axis=0) * math.sqrt(n))) < 1e-12


def test_max_collapse_U():
    from superfourier.catalog import max_collapse

    theory = max_collapse(5, 2)
    u = build_U(build_table(theory))
    root = math.sqrt(24)
    expected = np.array([[1, root], [root, -1]]) / 5
    assert np.allclose(u.entries, expected)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_j_symmetric_U(unitary_factory, p):
    # classes in order: {0}, big (0,1), small (1,0)
    u = unitary_factory("jsym-triangular", p=p)
    s = math.sqrt(p - 1)
    expected = np.array(
        [
            [1 / p, s / math.sqrt(p), s / p],
            [s / math.sqrt(p), 0, -math.sqrt(p) / p],
            [s / p, -math.sqrt(p) / p, (p - 1) / p],
        ]
    )
    assert np.allclose(u.entries, expected)
    assert verify_unitary(u).passed


def test_roots_of_unity():
    roots = roots_of_unity(4)
    assert np.allclose(roots, [1, 1j, -1, -1j])


def test_asymmetric_group_still_unitary():
    group = closure([GMatrix.of(5, [[1, 1], [0, 1]])])
    theory = build_theory(group)
    table = build_table(theory)
    report = check_table(table)
    assert report.reciprocity is None
    assert report.passed
    u = build_U(table)
    assert verify_unitary(u).passed


def test_build_U_rejects_broken_table(table_factory):
    table = table_factory("dct", n=5)
    broken = SupercharacterTable(table.theory, table.values * 1.5)
    with pytest.raises(UnitarityViolation):
        build_U(broken)
