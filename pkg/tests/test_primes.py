import pytest
from hypothesis import given, strategies as st

from bockstein.primes import (
    ALL_PRIMES, EMPTY, INF, NEG_INF, PrimeFn, PrimeSet, UndefinedArithmetic,
    check_prime, indicator, is_finite, select, value_from_json, value_to_json,
)


SMALL_PRIMES = [2, 3, 5, 7, 11, 13]

prime = st.sampled_from(SMALL_PRIMES)
prime_sets = st.builds(
    lambda ps, cof: PrimeSet(ps, cofinite=cof),
    st.frozensets(prime, max_size=4),
    st.booleans(),
)
values = st.integers(min_value=-6, max_value=6)
prime_fns = st.builds(
    lambda z, d, exc: PrimeFn(z, d, exc),
    values, values, st.dictionaries(prime, values, max_size=3),
)


class TestExtended:
    def test_ordering_against_ints(self):
        assert NEG_INF < -10 ** 9 < 10 ** 9 < INF
        assert INF > 0 and not INF < 0
        assert NEG_INF <= NEG_INF <= INF <= INF

    def test_addition(self):
        assert INF + 5 == INF
        assert 5 + INF == INF
        assert NEG_INF + 5 == NEG_INF
        assert INF + INF is INF
        with pytest.raises(UndefinedArithmetic):
            INF + NEG_INF

    def test_subtraction(self):
        assert INF - 3 is INF
        assert 3 - INF is NEG_INF
        with pytest.raises(UndefinedArithmetic):
            INF - INF

    def test_multiplication(self):
        assert INF * 2 is INF
        assert 2 * INF is INF
        assert INF * 0 == 0
        assert INF * INF is INF
        assert INF * (-1) is NEG_INF
        assert NEG_INF * INF is NEG_INF
        assert NEG_INF * NEG_INF is INF

    def test_negation_and_identity(self):
        assert -INF is NEG_INF and -NEG_INF is INF
        assert is_finite(7) and not is_finite(INF)

    def test_json_values(self):
        for v in (0, -3, 12, INF, NEG_INF):
            assert value_from_json(value_to_json(v)) == v
        with pytest.raises(ValueError):
            value_from_json(True)
        with pytest.raises(ValueError):
            value_from_json("infty")


def test_check_prime():
    assert check_prime(2) == 2
    assert check_prime(97) == 97
    for bad in (1, 0, -3, 4, 6, True, 2.0, "2"):
        with pytest.raises(ValueError):
            check_prime(bad)


class TestPrimeSet:
    def test_constructors(self):
        assert PrimeSet.of(3, 2, 3) == PrimeSet([2, 3])
        assert PrimeSet.all_except(5) == PrimeSet([5], cofinite=True)
        assert EMPTY.is_empty and not EMPTY.is_all
        assert ALL_PRIMES.is_all and not ALL_PRIMES.is_finite
        with pytest.raises(ValueError):
            PrimeSet.of(4)

    def test_membership(self):
        s = PrimeSet.all_except(2, 7)
        assert 3 in s and 2 not in s and 7 not in s
        assert 0 not in PrimeSet.of(2)

    @given(prime_sets, prime)
    def test_complement_membership(self, s, p):
        assert (p in ~s) == (p not in s)

    @given(prime_sets)
    def test_double_complement(self, s):
        assert ~~s == s

    @given(prime_sets, prime_sets, prime)
    def test_boolean_algebra_pointwise(self, s, t, p):
        assert (p in (s | t)) == (p in s or p in t)
        assert (p in (s & t)) == (p in s and p in t)
        assert (p in (s - t)) == (p in s and p not in t)

    @given(prime_sets, prime_sets)
    def test_de_morgan(self, s, t):
        assert ~(s | t) == (~s & ~t)
        assert ~(s & t) == (~s | ~t)

    @given(prime_sets)
    def test_json_round_trip(self, s):
        assert PrimeSet.from_json(s.to_json()) == s

    def test_render(self):
        assert PrimeSet.of(3, 2).render() == "{2,3}"
        assert ALL_PRIMES.render() == "all"
        assert PrimeSet.all_except(2, 5).render() == "all-{2,5}"


class TestPrimeFn:
    def test_canonical_form(self):
        f = PrimeFn(1, 1, {3: 1, 5: 2})
        assert f.exceptions == ((5, 2),)
        assert PrimeFn(0, 2, [(3, 4)]) == PrimeFn(0, 2, {3: 4})
        with pytest.raises(ValueError):
            PrimeFn(0, 0, [(3, 1), (3, 2)])

    def test_call_rejects_nonprimes(self):
        f = PrimeFn.constant(1)
        with pytest.raises(ValueError):
            f(4)

    @given(prime_fns, prime_fns, st.sampled_from([0] + SMALL_PRIMES))
    def test_pointwise_ops(self, f, g, x):
        assert f.add(g)(x) == f(x) + g(x)
        assert f.sub(g)(x) == f(x) - g(x)
        assert f.mul(g)(x) == f(x) * g(x)
        assert f.max_with(g)(x) == max(f(x), g(x))
        assert f.min_with(g)(x) == min(f(x), g(x))

    @given(prime_fns, st.sampled_from([0] + SMALL_PRIMES))
    def test_map(self, f, x):
        assert f.map(lambda v: 2 * v + 1)(x) == 2 * f(x) + 1

    @given(prime_fns)
    def test_sup_inf_attained(self, f):
        probe = set(SMALL_PRIMES) | {0} | set(f.exception_primes) | {17}
        vals = [f(x) for x in probe]
        assert f.sup() == max(vals)
        assert f.inf() == min(vals)

    @given(prime_fns, prime_sets)
    def test_sup_over(self, f, s):
        if s.is_empty:
            assert f.sup_over(s) is None
            return
        probe = [p for p in SMALL_PRIMES + [17, 19] if p in s]
        got = f.sup_over(s)
        assert all(f(p) <= got for p in probe)
        if s.is_finite:
            assert got == max(f(p) for p in s.primes)
        else:
            # 19 is beyond every exception used by the strategies.
            assert got >= f(19)

    @given(prime_fns, prime_fns)
    def test_leq_vs_pointwise(self, f, g):
        probe = [0] + SMALL_PRIMES + [17]
        assert f.leq(g) == all(f(x) <= g(x) for x in probe)

    @given(prime_fns, values)
    def test_where_equal(self, f, v):
        s = f.where_equal(v)
        for p in SMALL_PRIMES + [17]:
            assert (p in s) == (f(p) == v)

    @given(prime_fns, prime_fns)
    def test_differ(self, f, g):
        s = f.differ(g)
        for p in SMALL_PRIMES + [17]:
            assert (p in s) == (f(p) != g(p))

    @given(prime_fns)
    def test_level_sets_partition(self, f):
        pieces = f.level_sets()
        for p in SMALL_PRIMES + [17]:
            hits = [v for v, s in pieces if p in s]
            assert hits == [f(p)]

    @given(prime_fns)
    def test_json_round_trip(self, f):
        assert PrimeFn.from_json(f.to_json()) == f

    def test_infinite_values(self):
        f = PrimeFn(INF, 0, {2: INF})
        assert f.sup() is INF and f.inf() == 0
        g = f.add(PrimeFn.constant(5))
        assert g(2) is INF and g(3) == 5
        with pytest.raises(UndefinedArithmetic):
            f.sub(f)


class TestIndicatorSelect:
    @given(prime_sets, st.sampled_from(SMALL_PRIMES))
    def test_indicator(self, s, p):
        assert indicator(s)(p) == (1 if p in s else 0)
        assert indicator(s)(0) == 0

    @given(prime_sets, prime_fns, prime_fns, st.sampled_from(SMALL_PRIMES))
    def test_select(self, s, f, g, p):
        h = select(s, f, g)
        assert h(p) == (f(p) if p in s else g(p))
        assert h(0) == g(0)
