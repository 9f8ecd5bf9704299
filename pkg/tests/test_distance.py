import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import macwilliams, naive_min_distance, random_symmetric_sd, scramble, weight_distribution
from symdual import kernels
from symdual.code import LinearCode, singleton_bound
from symdual.distance import (DistanceBound, bruteforce_witness, find_low_weight, fingerprint,
                              information_sets, level_cost, min_distance_bruteforce, min_distance_bz,
                              min_weight_upper, projective_size, truncated_weight_enum)
from symdual.errors import BudgetExceeded
from symdual.seeds import shipped

SLOW = settings(max_examples=40, deadline=None)


@st.composite
def random_codes(draw, max_msgs=20000):
    p = draw(st.sampled_from([3, 5, 7, 11]))
    k = draw(st.integers(1, 6))
    while p**k > max_msgs:
        k -= 1
    n = draw(st.integers(k, k + 7))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    while True:
        g = rng.integers(0, p, size=(k, n))
        try:
            return LinearCode(g, p)
        except ValueError:
            continue


def test_projective_size():
    assert projective_size(19, 6) == (19**6 - 1) // 18
    assert projective_size(3, 1) == 1


@SLOW
@given(random_codes())
def test_bruteforce_matches_naive(c):
    d, w = bruteforce_witness(c)
    assert d == naive_min_distance(c.gen.data, c.p) == min_distance_bruteforce(c)
    assert c.contains(w) and np.count_nonzero(w) == d


@SLOW
@given(random_codes())
def test_bz_exact_matches_naive(c):
    b = min_distance_bz(c)
    assert b.exact and b.lower == b.upper == naive_min_distance(c.gen.data, c.p)
    if b.witness is not None:
        assert c.contains(b.witness) and np.count_nonzero(b.witness) == b.upper


@SLOW
@given(random_codes(), st.integers(0, 3000))
def test_bz_partial_bracket_is_sound(c, budget):
    d = naive_min_distance(c.gen.data, c.p)
    b = min_distance_bz(c, budget=budget)
    assert b.lower <= d <= b.upper <= singleton_bound(c)
    assert b.enumerated <= budget


def test_bz_zero_budget_is_trivial_bracket():
    c = shipped("gf19_g2")
    b = min_distance_bz(c, budget=0)
    assert (b.lower, b.upper, b.exact, b.enumerated) == (1, c.n - c.k + 1, False, 0)


def test_bz_target_stops_early():
    c = shipped("gf19_g2")
    b = min_distance_bz(c, target=4)
    assert b.lower >= 4 and b.enumerated <= min_distance_bz(c).enumerated


def test_bz_threads_do_not_change_result():
    c = shipped("a11_32")
    one = min_distance_bz(c, budget=2 * 10**6)
    two = min_distance_bz(c, budget=2 * 10**6, threads=3)
    assert one == two


def test_information_sets_are_disjoint_and_ranked():
    c = shipped("a19_40")
    sets = information_sets(c)
    seen = set()
    for s in sets:
        assert not seen & set(s.columns)
        seen |= set(s.columns)
    assert sets[0].rank == c.k and sum(s.rank for s in sets) <= c.n


def test_bruteforce_budget():
    with pytest.raises(BudgetExceeded):
        min_distance_bruteforce(shipped("a11_32"), budget=10**6)


def test_level_cost_counts_projective_words():
    from math import comb
    assert level_cost(6, 2, 19) == comb(6, 2) * 18
    assert sum(level_cost(5, w, 7) for w in range(1, 6)) == projective_size(7, 5)


# -- backends ---------------------------------------------------------------

needs_both = pytest.mark.skipif(len(kernels.available_backends()) < 2, reason="compiled kernels not built")


@needs_both
@SLOW
@given(random_codes(max_msgs=50000), st.integers(1, 4))
def test_enum_level_backends_agree(c, w):
    g, piv = c.systematic()
    mask = np.ones(c.n, dtype=bool)
    mask[list(piv)] = False
    table = kernels.multiple_table(g[:, mask], c.p)
    w = min(w, c.k)
    outs = []
    for b in ("cython", "python"):
        msg = np.zeros(c.k, dtype=np.int64)
        hist = np.zeros(c.n + 1, dtype=np.int64)
        best, count = kernels.enum_level(table, w, 0, c.k, c.n + 1, msg, hist, backend=b)
        outs.append((best, count, msg.tolist(), hist.tolist()))
    assert outs[0] == outs[1]


@needs_both
@SLOW
@given(random_codes(max_msgs=50000))
def test_gray_backends_agree(c):
    res = []
    for b in ("cython", "python"):
        msg = np.zeros(c.k, dtype=np.int64)
        best, count = kernels.gray_min_weight(c.gen.data, c.p, msg, backend=b)
        word = (msg @ c.gen.data) % c.p
        assert np.count_nonzero(word) == best
        res.append((best, count))
    assert res[0] == res[1]


# -- randomized upper bound -------------------------------------------------

@pytest.mark.parametrize("name,d", [("gf3_g1", 6), ("gf19_g2", 7), ("a11_32", 12)])
def test_isd_finds_true_minimum(name, d):
    c = shipped(name)
    low = find_low_weight(c, iterations=60, seed=5)
    assert low.weight == d
    assert c.contains(low.codeword) and np.count_nonzero(low.codeword) == d


def test_isd_deterministic_and_zero_iterations():
    c = shipped("a23_32")
    assert find_low_weight(c, 5, seed=9) == find_low_weight(c, 5, seed=9)
    assert min_weight_upper(c, 0) == singleton_bound(c)


# -- weight enumerators -----------------------------------------------------

@SLOW
@given(random_codes(max_msgs=5000), st.integers(0, 6))
def test_truncated_enum_matches_naive(c, wmax):
    naive = weight_distribution(c.gen.data, c.p)
    wmax = min(wmax, c.n)
    assert truncated_weight_enum(c, wmax) == naive[: wmax + 1]


@pytest.mark.parametrize("p,k", [(3, 4), (5, 3), (7, 2), (13, 3), (3, 6)])
def test_self_dual_enumerator_is_macwilliams_fixed(p, k):
    c = random_symmetric_sd(p, k, np.random.default_rng(p + k))
    dist = truncated_weight_enum(c, c.n)
    assert dist == weight_distribution(c.gen.data, p)
    assert macwilliams(dist, p) == dist


def test_fingerprint_is_equivalence_invariant():
    rng = np.random.default_rng(4)
    c = random_symmetric_sd(7, 4, rng)
    assert fingerprint(c, 5) == fingerprint(scramble(c, rng), 5)
    other = random_symmetric_sd(7, 4, rng)
    if truncated_weight_enum(other, 5) != truncated_weight_enum(c, 5):
        assert fingerprint(other, 5) != fingerprint(c, 5)


def test_distance_bound_validation_and_dict():
    with pytest.raises(ValueError):
        DistanceBound(lower=5, upper=4)
    d = DistanceBound(3, 3, enumerated=10, completed=(1, 1), ranks=(4, 4), seed=2).to_dict()
    assert d["exact"] and d["effort"]["enumerated"] == 10 and d["seed"] == 2
