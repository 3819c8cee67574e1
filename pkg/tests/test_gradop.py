import threading

import pytest
from hypothesis import given, strategies as st

from wtrace.fock import FockVector, basis_vector, vacuum
from wtrace.gradop import (annihilation, apply, commutator, compose, creation, diagonal_degree,
                           equal_up_to, first_difference, identity, linear, matrix_block,
                           matrix_block_json, solve_operator_span, zero)


def test_rank_bookkeeping():
    assert creation(2).rank == 2 and annihilation(2).rank == -2
    assert compose(creation(1), annihilation(3)).rank == -2
    with pytest.raises(ValueError):
        creation(1) + creation(2)


def test_heisenberg_blocks():
    for n in range(1, 4):
        assert equal_up_to(commutator(annihilation(n), creation(n)), linear([(n, identity())], 0), 8)
        assert equal_up_to(commutator(annihilation(n), creation(n + 1)), zero(1), 8)


def test_first_difference_witness():
    assert first_difference(identity(), diagonal_degree(1), 5) == 0
    assert first_difference(diagonal_degree(1), linear([(2, diagonal_degree("1/2"))], 0), 5) is None
    assert first_difference(diagonal_degree(1), diagonal_degree(2), 5) == 1
    assert first_difference(identity(), identity(), 5) is None


def test_matrix_blocks():
    m = matrix_block(annihilation(1), 2)
    assert m == [[0, 2]]  # p_1 d/dp_1 on [2], [1,1] -> [1]
    j = matrix_block_json(creation(1), 0)
    assert j["basis_out"] == [[1]] and j["matrix"] == [["1"]]
    assert matrix_block_json(annihilation(2), 1)["basis_out"] == []


def test_apply_and_span():
    v = apply(compose(creation(1), creation(2)), vacuum())
    assert v == basis_vector([2, 1])
    target = linear([(3, identity()), (-2, diagonal_degree(1))], 0)
    assert solve_operator_span(target, [identity(), diagonal_degree(1)], 6) == [3, -2]
    with pytest.raises(ValueError):
        solve_operator_span(target, [creation(1)], 6)


def test_concurrent_blocks_agree():
    op = compose(annihilation(1), compose(creation(2), annihilation(1)))
    results = []

    def work():
        results.append([op.block(d) for d in range(9)])

    threads = [threading.Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
