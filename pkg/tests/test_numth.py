import pytest
from hypothesis import given, settings, strategies as st

from groupfact import numth as nt
from groupfact.permcore import enumerate_subgroups, symmetric_group


def test_is_prime():
    assert nt.is_prime(2) and nt.is_prime(3) and nt.is_prime(97)
    assert nt.is_prime(2 ** 31 - 1)
    assert not nt.is_prime(1)
    assert not nt.is_prime(91)
    assert not nt.is_prime(2 ** 32 + 1)


def test_factorize_and_valuation():
    assert nt.factorize(360) == {2: 3, 3: 2, 5: 1}
    assert nt.valuation(48, 2) == 4
    assert nt.rpart(48, 2) == 16
    assert nt.rpart(48, 3) == 3
    assert nt.rpart(48, 5) == 1
    assert nt.r_coprime_part(48, 2) == 3
    assert nt.r_zero(2) == 4 and nt.r_zero(3) == 3 and nt.r_zero(7) == 7


def test_prime_power_decomposition():
    assert nt.prime_power(8) == (2, 3)
    assert nt.prime_power(81) == (3, 4)
    assert nt.prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        nt.prime_power(12)
    qs = [q for q, _, _ in nt.prime_powers_upto(16)]
    assert qs == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_multiplicative_order():
    assert nt.multiplicative_order(2, 7) == 3
    assert nt.multiplicative_order(3, 7) == 6
    assert nt.multiplicative_order(2, 23) == 11
    with pytest.raises(ValueError):
        nt.multiplicative_order(2, 8)


def test_ppd_routes_agree():
    # the order characterization and the divisibility definition coincide
    primes = [r for r in range(3, 200) if nt.is_prime(r)]
    for a in range(2, 10):
        for m in range(2, 10):
            for r in primes:
                assert (nt.is_ppd_by_order(r, a, m)
                        == nt.is_ppd_by_divisibility(r, a, m)), (r, a, m)


def test_zsigmondy_exceptions():
    assert nt.zsigmondy_exceptional(2, 6)
    assert nt.zsigmondy_exceptional(3, 2)     # 3+1 = 4
    assert nt.zsigmondy_exceptional(7, 2)     # 7+1 = 8
    assert nt.zsigmondy_exceptional(2, 1)
    assert not nt.zsigmondy_exceptional(2, 2)  # 2+1 = 3, not a 2-power
    assert not nt.zsigmondy_exceptional(5, 2)
    assert not nt.zsigmondy_exceptional(2, 5)
    assert not nt.zsigmondy_exceptional(3, 6)


def test_find_ppd_values():
    assert nt.find_ppd(2, 6) is None
    assert nt.find_ppd(7, 2) is None
    assert nt.find_ppd(2, 4) == 5
    assert nt.find_ppd(2, 11) == 23
    assert nt.find_ppd(3, 5) == 11
    assert nt.find_ppd(2, 10) == 11
    assert nt.find_ppd(3, 1) == 2
    assert nt.find_ppd(2, 1) is None


def test_ppd_existence_matches_exceptions():
    for a in range(2, 13):
        for m in range(1, 13):
            r = nt.find_ppd(a, m)
            assert (r is None) == nt.zsigmondy_exceptional(a, m), (a, m)
            if r is not None and m >= 2:
                assert nt.is_ppd_by_order(r, a, m)
                assert r % m == 1
                assert r > m


@given(st.integers(2, 300), st.integers(1, 24),
       st.sampled_from([2, 3, 5, 7, 11, 13, 17]))
@settings(max_examples=300, deadline=None)
def test_rpart_lemmas_property(t, f, r):
    assert nt.rpart_lemma_biconditional(t, f, r)
    assert nt.rpart_lemma_product(t, f, r)
    assert nt.rpart_lemma_lower_bound(t, f, r)


def test_rpart_lemma_product_instance():
    # t=5, r=2: 5 = 1 mod 4, so (5^f-1)_2 = f_2 * (5-1)_2 = f_2 * 4
    assert nt.rpart(5 ** 6 - 1, 2) == nt.rpart(6, 2) * nt.rpart(4, 2)
    assert nt.rpart_lemma_product(5, 6, 2)


def test_dixon_bound_exact():
    assert nt.dixon_bound_holds(24, 4)
    assert not nt.dixon_bound_holds(25, 4)
    assert nt.dixon_bound_holds(1, 1)
    # order of the biggest solvable subgroup of S_n for small n
    for n, biggest in [(3, 6), (4, 24), (5, 24), (6, 72), (7, 144)]:
        assert nt.dixon_bound_holds(biggest, n), n


def test_dixon_bound_against_enumeration():
    # cross-check: the largest solvable subgroup order found by enumeration
    for n in range(3, 7):
        subs = enumerate_subgroups(symmetric_group(n), "solvable-only")
        biggest = max(c.order for c in subs.classes)
        assert nt.dixon_bound_holds(biggest, n), (n, biggest)


def test_legendre_bound():
    assert nt.factorial_valuation(10, 2) == 8
    assert nt.factorial_valuation(10, 5) == 2
    assert nt.factorial_valuation(100, 2) == 97
    for n in range(1, 300):
        for p in (2, 3, 5, 7, 11):
            assert nt.legendre_bound_holds(n, p)


def test_valid_classical_ranges():
    assert nt.valid_classical("PSL", 2, 4)
    assert not nt.valid_classical("PSL", 2, 2)
    assert not nt.valid_classical("PSL", 2, 3)
    assert not nt.valid_classical("PSU", 3, 2)
    assert nt.valid_classical("PSU", 3, 3)
    assert not nt.valid_classical("PSp", 4, 2)
    assert nt.valid_classical("PSp", 4, 3)
    assert not nt.valid_classical("PSp", 5, 3)
    assert nt.valid_classical("Omega", 7, 3)
    assert not nt.valid_classical("Omega", 7, 4)
    assert not nt.valid_classical("Omega", 5, 3)
    assert nt.valid_classical("POmega+", 8, 2)
    assert not nt.valid_classical("POmega+", 6, 2)
    assert not nt.valid_classical("PSL", 2, 6)


def test_simple_orders_via_families():
    assert nt.simple_order("PSL", 2, 7) == 168
    assert nt.simple_order("PSL", 2, 11) == 660
    assert nt.simple_order("PSp", 4, 3) == 25920
    assert nt.simple_order("PSU", 4, 2) == 25920
    assert nt.simple_order("Omega", 7, 3) == 4585351680
    assert nt.simple_order("POmega+", 8, 2) == 174182400


def test_out_orders():
    assert nt.out_order("PSL", 2, 7) == 2
    assert nt.out_order("PSL", 2, 9) == 4
    assert nt.out_order("PSL", 3, 4) == 12
    assert nt.out_order("PSU", 3, 3) == 2
    assert nt.out_order("PSU", 4, 3) == 8
    assert nt.out_order("PSp", 4, 4) == 4
    assert nt.out_order("PSp", 6, 3) == 2
    assert nt.out_order("Omega", 7, 3) == 2
    assert nt.out_order("POmega+", 8, 2) == 6
    assert nt.out_order("POmega+", 8, 3) == 24
    assert nt.out_order("POmega-", 8, 3) == 4
    assert nt.out_order("POmega-", 10, 3) == 8
    assert nt.out_structure("POmega+", 8, 3) == "S4 x C1"
    assert nt.out_structure("PSL", 2, 9) == "C2 x C2"


def test_minimal_degrees_table():
    assert nt.minimal_faithful_degree("PSL", 2, 5) == 5
    assert nt.minimal_faithful_degree("PSL", 2, 7) == 7
    assert nt.minimal_faithful_degree("PSL", 2, 9) == 6
    assert nt.minimal_faithful_degree("PSL", 2, 11) == 11
    assert nt.minimal_faithful_degree("PSL", 2, 13) == 14
    assert nt.minimal_faithful_degree("PSL", 4, 2) == 8
    assert nt.minimal_faithful_degree("PSL", 3, 4) == 21
    assert nt.minimal_faithful_degree("PSp", 4, 3) == 27
    assert nt.minimal_faithful_degree("PSp", 6, 2) == 28
    assert nt.minimal_faithful_degree("PSU", 3, 5) == 50
    assert nt.minimal_faithful_degree("PSU", 4, 2) == 27
    assert nt.minimal_faithful_degree("Omega", 7, 3) == 351
    assert nt.minimal_faithful_degree("POmega+", 8, 2) == 120
    assert nt.minimal_faithful_degree("POmega-", 8, 2) == 119
    assert nt.alternating_min_degree(7) == 7
    assert nt.SPORADIC_MIN_DEGREE["M11"] == 11
    assert nt.SPORADIC_MIN_DEGREE["HS"] == 100


def test_min_degree_consistent_across_isomorphisms():
    # PSp4(3) and PSU4(2) name the same group; the table agrees
    assert (nt.minimal_faithful_degree("PSp", 4, 3)
            == nt.minimal_faithful_degree("PSU", 4, 2) == 27)
    # PSL2(4), PSL2(5), and the alternating view of A5 agree
    assert (nt.minimal_faithful_degree("PSL", 2, 4)
            == nt.minimal_faithful_degree("PSL", 2, 5)
            == nt.alternating_min_degree(5) == 5)


def test_common_divisor_inequality_and_classification():
    ids = nt.classical_ids(12, 49)
    assert len(ids) > 700
    for fam, n, q in ids:
        for r, tr, orr, eq in nt.common_divisor_report(fam, n, q):
            assert tr >= r * orr, (fam, n, q, r)
            if r in (2, 3):
                assert eq == nt.equality_case_predicted(fam, n, q, r), (fam, n, q, r)


def test_equality_cases_spot():
    assert nt.equality_case_predicted("PSL", 2, 5, 2)
    assert nt.equality_case_predicted("PSL", 2, 4, 2)   # same group as PSL2(5)
    assert nt.equality_case_predicted("PSL", 2, 9, 2)
    assert not nt.equality_case_predicted("PSL", 2, 7, 2)
    assert nt.equality_case_predicted("PSL", 2, 8, 3)
    assert nt.equality_case_predicted("PSL", 3, 4, 3)
    assert nt.equality_case_predicted("PSU", 3, 5, 3)
    assert not nt.equality_case_predicted("PSU", 3, 3, 3)
    assert not nt.equality_case_predicted("PSp", 4, 3, 2)
