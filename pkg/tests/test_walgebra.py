import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from wtrace.fock import basis_vector, vacuum
from wtrace.gradop import apply, commutator, equal_up_to, identity, linear
from wtrace.walgebra import (central_term, check_relation, relation_witness,
                             structure_constants, virasoro_bar, w)


def test_structure_constant_examples():
    e = structure_constants(1, 0, -1, 0)
    assert e.as_dict() == {} and e.central == 1
    e = structure_constants(1, 1, -1, 1)
    assert e.as_dict() == {(0, 1): -2} and e.central == 0
    e = structure_constants(2, 1, -2, 1)
    assert e.as_dict() == {(0, 1): -4} and e.central == -1


def test_expansion_json():
    j = structure_constants(2, 1, -2, 1).to_json()
    assert j == {"linear": [{"l": 0, "k": 1, "coeff": "-4"}], "central": "-1"}


@given(st.integers(-3, 3), st.integers(0, 3), st.integers(-3, 3), st.integers(0, 3))
def test_structure_constants_antisymmetric(l, k, m, j):
    a, b = structure_constants(l, k, m, j), structure_constants(m, j, l, k)
    assert a.central == -b.central
    assert a.as_dict() == {key: -c for key, c in b.as_dict().items()}


def test_central_term_cubic():
    # the central term only depends on the pairing l with -l
    for l in range(-4, 5):
        assert central_term(l, 1, 1) == structure_constants(l, 1, -l, 1).central


def test_generators_on_vectors():
    assert apply(w(-2, 0), vacuum()) == basis_vector([2])
    assert apply(w(0, 2), basis_vector([1])) == basis_vector([1])
    assert apply(w(0, 1), basis_vector([2, 1])) == -3 * basis_vector([2, 1])
    assert w(3, 2).rank == -3 and w(3, 2).filtration == 2


def test_relation_and_witness():
    assert check_relation(2, 2, -1, 3, 6)
    assert relation_witness(1, 2, -2, 1, 6) is None


def test_wrong_constant_is_detected():
    # the Virasoro central value is 1/2 at l = 2, not 1
    lhs = commutator(virasoro_bar(2), virasoro_bar(-2))
    good = linear([(4, virasoro_bar(0)), (mpq(1, 2), identity())], 0)
    bad = linear([(4, virasoro_bar(0)), (1, identity())], 0)
    assert equal_up_to(lhs, good, 6)
    assert not equal_up_to(lhs, bad, 6)


def test_w00_is_zero_operator():
    assert all(not col for d in range(5) for col in w(0, 0).block(d).values())
