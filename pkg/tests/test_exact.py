
import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from wtrace.exact import RowSpace, format_rational, rank, rat_arith, rational, solve_span

rats = st.fractions(min_value=-50, max_value=50, max_denominator=20)
vectors = st.lists(st.dictionaries(st.integers(0, 6), rats, max_size=5), max_size=7)


def test_rational_parsing_and_format():
    assert rational("3/6") == mpq(1, 2)
    assert format_rational(mpq(4, 2)) == "2"
    assert format_rational(mpq(-3, 9)) == "-1/3"
    with pytest.raises(ValueError):
        rational("0.5")


def test_arith_and_division_by_zero():
    assert rat_arith("1/2", "1/3", "add") == mpq(5, 6)
    assert rat_arith(2, "1/4", "div") == 8
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "div")
    with pytest.raises(ValueError):
        rat_arith(1, 2, "pow")


@given(rats, rats)
def test_arith_matches_fraction(a, b):
    assert rat_arith(a, b, "mul") == mpq(a * b)
    assert rat_arith(a, b, "sub") == mpq(a - b)
    assert rational(format_rational(mpq(a))) == mpq(a)


@given(vectors, st.randoms())
def test_rank_invariant_under_shuffle_and_scaling(vecs, rnd):
    r = rank(vecs)
    shuffled = list(vecs)
    rnd.shuffle(shuffled)
    assert rank(shuffled) == r
    scaled = [{k: 3 * v for k, v in vec.items()} for vec in vecs]
    assert rank(scaled) == r
    assert rank(vecs + vecs) == r


@given(vectors)
def test_rowspace_contains_inserted(vecs):
    space = RowSpace()
    for v in vecs:
        space.insert(v)
    assert all(space.contains(v) for v in vecs)
    assert space.rank <= len(vecs)


def test_rank_known():
    assert rank([{0: 1, 1: 2}, {0: 2, 1: 4}, {2: 1}]) == 2
    assert rank([]) == 0


@given(vectors, st.lists(rats, min_size=7, max_size=7))
def test_solve_span_recovers_combination(vecs, coeffs):
    target = {}
    for c, v in zip(coeffs, vecs):
        for k, x in v.items():
            target[k] = target.get(k, 0) + c * x
    sol = solve_span(vecs, target)
    assert sol is not None
    rebuilt = {}
    for c, v in zip(sol, vecs):
        for k, x in v.items():
            rebuilt[k] = rebuilt.get(k, 0) + c * mpq(x)
    assert {k: v for k, v in rebuilt.items() if v} == {k: mpq(v) for k, v in target.items() if v}


def test_solve_span_none_outside():
    assert solve_span([{0: 1}], {1: 1}) is None
