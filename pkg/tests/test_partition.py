from math import comb

import numpy as np
import pytest

from superfourier.catalog import build_named
from superfourier.errors import CapExceeded, NotJSymmetric
from superfourier.groups import closure, enumerate_GL
from superfourier.modular import GMatrix, GVector
from superfourier.partition import (
    Action,
    align_to_j,
    all_vectors,
    compute_partition,
    j_pairing,
    negation_pairing,
    stabilizer_order,
)


def test_all_vectors_in_lexicographic_order():
    v = all_vectors(3, 2)
    assert v.shape == (9, 2)
    assert v[0].tolist() == [0, 0]
    assert v[1].tolist() == [0, 1]
    assert v[3].tolist() == [1, 0]


def test_gl_partition_has_two_classes():
    p = compute_partition(enumerate_GL(3, 2))
    assert p.count == 2
    assert p.sizes.tolist() == [1, 8]
    assert p.zero_index == 0
    assert p.rep(1) == GVector.of(3, [0, 1])


@pytest.mark.parametrize("n, d", [(2, 3), (3, 2), (4, 3), (5, 2), (3, 4)])
def test_symmetric_classes_are_multisets(theory_factory, n, d):
    theory = theory_factory("symmetric", n=n, d=d)
    part = theory.y
    assert part.count == comb(n + d - 1, d)
    assert part.sizes.sum() == n ** d


def test_classes_partition_the_space(theory_factory):
    part = theory_factory("kloosterman", p=5).y
    seen = np.concatenate([part.member_codes(i) for i in range(part.count)])
    assert sorted(seen.tolist()) == list(range(25))
    for i in range(part.count):
        assert all(part.class_of(v) == i for v in part.members(i))


def test_reps_are_smallest_members(theory_factory):
    part = theory_factory("dct", n=8).y
    for i in range(part.count):
        assert part.rep_codes[i] == part.member_codes(i).min()
    assert part.rep_codes.tolist() == sorted(part.rep_codes.tolist())


def test_negation_pairing(theory_factory):
    part = theory_factory("dft", n=5).y
    assert negation_pairing(part).tolist() == [0, 4, 3, 2, 1]
    part = theory_factory("dct", n=6).y
    assert negation_pairing(part).tolist() == list(range(part.count))


def test_orbit_stabilizer(theory_factory):
    theory = theory_factory("symmetric", n=4, d=3)
    group = theory.group
    for i in range(theory.y.count):
        v = theory.y.rep(i)
        assert theory.y.sizes[i] * stabilizer_order(group, v) == group.order


def test_dual_partition_of_asymmetric_group():
    g = closure([GMatrix.of(5, [[1, 1], [0, 1]])])
    py = compute_partition(g, Action.DIRECT)
    px = compute_partition(g, Action.INVERSE_TRANSPOSE)
    assert py.count == px.count == 9
    # A y moves the first coordinate; A^{-T} x moves the second
    assert py.class_of(GVector.of(5, [0, 1])) == py.class_of(GVector.of(5, [3, 1]))
    assert px.class_of(GVector.of(5, [1, 0])) == px.class_of(GVector.of(5, [1, 3]))
    assert not py.same_classes(px)


def test_j_alignment():
    p = 5
    j = GMatrix.of(p, [[0, 1], [1, 0]])
    theory = build_named("jsym-triangular", p=p)
    pairing = j_pairing(theory.y, theory.x, j)
    assert pairing.tolist() == list(range(theory.count))
    for i in range(theory.count):
        image = GVector.of(p, theory.y.rep(i).coords[::-1])
        assert theory.x.class_of(image) == i


def test_j_alignment_rejects_bad_j():
    theory = build_named("jsym-triangular", p=3)
    with pytest.raises(NotJSymmetric):
        align_to_j(theory.y, theory.x, GMatrix.identity(3, 2))


def test_vector_cap():
    with pytest.raises(CapExceeded):
        compute_partition(enumerate_GL(2, 2), cap=3)
