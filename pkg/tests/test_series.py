from wtrace.series import hypergeometric_check, phi_product, phi_series, product_formula, trace_count


def test_product_equals_count():
    for R, K in [(3, 0), (5, 3), (6, 2)]:
        assert product_formula(">", R, K) == trace_count(R, K)


def test_spot_values():
    s = product_formula(">", 5, 3)
    assert s[(1, 0)] == 1 and s[(2, 1)] == 2 and s[(3, 0)] == 3
    assert all(s[(1, k)] == 1 for k in range(4))
    assert product_formula(">", 2, 1)[(2, 1)] == 2


def test_partition_column_and_mirror():
    s = product_formula("<", 6, 0)
    assert [s[(r, 0)] for r in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    j = s.to_json()
    assert all(item["t"] <= 0 for item in j["coeffs"])
    assert s.mirrored().side == ">"


def test_hypergeometric():
    assert hypergeometric_check(4, 8)
    assert phi_series(3, 5) == phi_product(3, 5)
