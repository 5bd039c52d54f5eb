import itertools

import pytest

from bunkbed.errors import EmptyH
from bunkbed.exact import bunkbed_polynomials, elevate, multiply_by_p_power
from bunkbed.graph import path_graph
from bunkbed.path import PathInstance, check_path_equality, check_path_factorization, max_transversal

from oracles import brute_counts


@pytest.mark.parametrize("h,expected", [((2, 4), 4), ((), None), ((1,), 1)])
def test_max_transversal(h, expected):
    assert max_transversal(h) == expected


class TestFactorization:
    def test_n2_h1(self):
        rep = check_path_factorization(PathInstance(2, [1]))
        assert rep.passed and rep.m == 1
        assert rep.polynomials["same_m"].is_one()
        assert rep.polynomials["same_n"].counts == (0, 1, 1)

    def test_m_equals_n(self):
        rep = check_path_factorization(PathInstance(3, [3]))
        assert rep.passed and rep.m == 3
        assert rep.polynomials["same_n"] == rep.polynomials["same_m"]

    def test_n4_h2_frozen(self):
        rep = check_path_factorization(PathInstance(4, [2]))
        # frozen from oracles.brute_counts on the 2^6 masks
        assert rep.polynomials["same_n"].counts == (0, 0, 0, 1, 3, 3, 1)
        assert rep.polynomials["same_m"].counts == (0, 1, 5, 10, 10, 5, 1)
        assert rep.passed
        assert elevate(rep.polynomials["same_n"], 2) == multiply_by_p_power(rep.polynomials["same_m"], 2)

    def test_empty(self):
        with pytest.raises(EmptyH):
            check_path_factorization(PathInstance(3, []))

    def test_report_json(self):
        doc = check_path_factorization(PathInstance(3, [1])).to_json()
        assert doc["m"] == 1 and doc["factor_exponent"] == 2 and doc["verdict"] == "PASS"
        assert set(doc["links"].values()) == {"PASS"}


class TestEquality:
    def test_n2_full(self):
        rep = check_path_equality(PathInstance(2, [1, 2]))
        assert rep.same.counts == rep.cross.counts == (0, 2, 1)

    @pytest.mark.parametrize("n,h", [(3, [2]), (5, [1, 3])])
    def test_difference_zero(self, n, h):
        rep = check_path_equality(PathInstance(n, h))
        assert rep.passed
        assert list(rep.same.counts) == brute_counts(n, path_graph(n).edges, h, 1, n)

    def test_empty(self):
        with pytest.raises(EmptyH):
            check_path_equality(PathInstance(4, []))


@pytest.mark.parametrize("n", range(1, 6))
def test_empty_h_behaviour(n):
    same, cross = bunkbed_polynomials(path_graph(n), [], 1, n)
    assert cross.is_zero()
    # same-level needs every top edge open: p^(n-1), i.e. counts C(n-1, k-(n-1))
    m = 2 * (n - 1)
    expected = [0] * (n - 1) + [len(list(itertools.combinations(range(n - 1), k))) for k in range(n)]
    assert list(same.counts) == expected[: m + 1]


def test_exhaustive_up_to_six():
    for n in range(1, 7):
        for bits in range(1, 1 << n):
            h = [i + 1 for i in range(n) if bits >> i & 1]
            assert check_path_equality(PathInstance(n, h)).passed
            assert check_path_factorization(PathInstance(n, h)).passed
