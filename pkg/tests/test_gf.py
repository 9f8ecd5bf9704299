import pytest
from hypothesis import given, strategies as st

from symdual import gf
from symdual.errors import ZeroInverse

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 1009, 1013]
BIG_PRIMES = [4093, 32749, 65521]  # past the table threshold, p = 1 and 3 mod 4 mixed

primes = st.sampled_from(SMALL_PRIMES + BIG_PRIMES)


def trial_division(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


@given(st.integers(-10, 70000))
def test_is_prime_matches_trial_division(n):
    assert gf.is_prime(n) == trial_division(n)


@pytest.mark.parametrize("bad", [0, 1, 2, 4, 9, 15, 65536, 65537, 1 << 17])
def test_field_rejects_bad_moduli(bad):
    with pytest.raises(ValueError):
        gf.FieldCtx(bad)


@given(primes, st.integers())
def test_inverse_agrees_with_pow(p, a):
    ctx = gf.get_field(p)
    if a % p == 0:
        with pytest.raises(ZeroInverse):
            ctx.inv(a)
        with pytest.raises(ZeroDivisionError):
            gf.inv(a, ctx)
    else:
        assert ctx.inv(a) == pow(a, -1, p)
        assert ctx.inv(a) * a % p == 1


@given(primes, st.integers())
def test_legendre_is_euler_criterion(p, a):
    ctx = gf.get_field(p)
    e = pow(a % p, (p - 1) // 2, p)
    expected = 0 if a % p == 0 else (1 if e == 1 else -1)
    assert ctx.legendre(a) == expected == gf.legendre(a, ctx)
    assert ctx.is_square(a) == (expected >= 0)


@given(primes, st.integers())
def test_sqrt_returns_all_roots_sorted(p, a):
    ctx = gf.get_field(p)
    roots = ctx.sqrt(a)
    assert list(roots) == sorted(roots)
    assert all(r * r % p == a % p for r in roots)
    if a % p == 0:
        assert roots == (0,)
    elif ctx.legendre(a) == 1:
        assert len(roots) == 2 and roots[0] + roots[1] == p
    else:
        assert roots == ()


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_sqrt_exhaustive_small(p):
    ctx = gf.get_field(p)
    for a in range(p):
        assert set(ctx.sqrt(a)) == {r for r in range(p) if r * r % p == a}


def test_sqrt_tonelli_shanks_hard_case():
    # 65521 - 1 = 2^4 * 4095: several rounds of the 2-adic loop
    p = 65521
    ctx = gf.get_field(p)
    for a in (2, 3, 17, 65520, 12345):
        for r in ctx.sqrt(a):
            assert r * r % p == a


def test_negative_and_canonical():
    ctx = gf.get_field(7)
    assert ctx.neg(3) == 4 and ctx.neg(0) == 0
    assert ctx.canon(-1) == 6 and ctx.canon(15) == 1


def test_squares_listing():
    assert gf.get_field(11).squares() == [1, 3, 4, 5, 9]


def test_dot():
    ctx = gf.get_field(5)
    assert gf.dot([1, 2, 3], [4, 4, 4], ctx) == (4 + 8 + 12) % 5


def test_field_cache_and_pickle():
    import pickle

    a = gf.get_field(23)
    assert a is gf.get_field(23)
    b = pickle.loads(pickle.dumps(a))
    assert b == a and b.p == 23
