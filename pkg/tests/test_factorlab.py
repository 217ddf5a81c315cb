"""Factorization search and verification: coset-transitivity certificates,
the two search modes, expected-row diffing, and the bundled group catalog."""

import random

import pytest

from groupfact.factorlab import (
    FactorizationRecord, check_table, descend_factorization,
    divisibility_audit, expected_rows, factorization_criteria,
    intersection_group, is_psl2_generic_pair, known_group_ids,
    lift_factorization, load_expected_tables, m11, meet_order, named_group,
    psl2, psl2_orders, psl3_3, psp4_3, records_for_table,
    search_solvable_factorizations, structure_signature, table_view,
    targeted_records, two_solvable_search, verify_factorization,
    TABLE_IDS, TableRow,
)
from groupfact.gfmat import psl_order, psp_order
from groupfact.permcore import (
    PermGroup, alternating_group, cyclic_group, dihedral_group,
    find_subgroup_by_order, symmetric_group,
)


@pytest.fixture(scope="module")
def l27():
    return psl2(7)


@pytest.fixture(scope="module")
def l211():
    return psl2(11)


@pytest.fixture(scope="module")
def l27_two_solvable(l27):
    return two_solvable_search(l27, group_id="PSL2(7)")


def sub(g, order, seed=0):
    w = find_subgroup_by_order(g, order, seed=seed)
    assert w is not None, "no witness of order %d" % order
    return w


# ---------------------------------------------------------------------------
# catalog groups

@pytest.mark.parametrize("q", [4, 5, 7, 9, 11, 13])
def test_psl2_certification(q):
    g = psl2(q)
    assert g.degree == q + 1
    assert g.order() == psl_order(2, q)
    assert g.is_k_transitive(2)
    assert g.is_simple()


def test_psl2_small_coincidence():
    assert psl2(4).order() == psl2(5).order() == 60


def test_psl3_3_certification():
    g = psl3_3()
    assert g.degree == 13
    assert g.order() == psl_order(3, 3) == 5616
    assert g.is_k_transitive(2)
    assert g.is_simple()


def test_psp4_3_certification():
    g = psp4_3()
    assert g.degree == 40
    assert g.order() == psp_order(2, 3) == 25920
    assert g.is_transitive()
    # too big for the element-table simplicity test; certify perfection instead
    assert g.is_perfect() and not g.is_solvable()


def test_m11_certification():
    g = m11()
    assert g.degree == 11
    assert g.order() == 7920
    assert g.is_k_transitive(4)
    assert g.is_simple()


def test_named_group_catalog():
    ids = known_group_ids()
    assert ids == ("M11", "PSL2(11)", "PSL2(23)", "PSL2(7)", "PSL3(3)",
                   "PSp4(3)")
    assert named_group("PSL2(7)").order() == 168
    with pytest.raises(KeyError):
        named_group("PSL4(3)")


# ---------------------------------------------------------------------------
# structure signatures

def test_structure_signature_values():
    assert structure_signature(symmetric_group(4)) == (24, True, False, 3, False)
    assert structure_signature(alternating_group(5)) == (60, False, True, None, True)
    assert structure_signature(cyclic_group(6)) == (6, True, False, 1, False)
    assert structure_signature(symmetric_group(1)) == (1, True, False, 0, False)
    # nonsolvable and non-perfect both ways
    assert structure_signature(symmetric_group(5)) == (120, False, False, None, False)


def test_structure_signature_above_simplicity_limit():
    sig = structure_signature(psp4_3())
    assert sig[:4] == (25920, False, True, None)
    assert sig[4] is None


# ---------------------------------------------------------------------------
# verification primitive

def test_verify_s4_example():
    g = symmetric_group(4)
    d8 = sub(g, 8)
    a4 = alternating_group(4)
    rec = verify_factorization(g, d8, a4, group_id="S4")
    assert rec.factorizes and rec.orbit_count == 1
    assert rec.orders == (24, 8, 12, 4)
    assert rec.h_solvable and rec.k_solvable
    # D8 has core V4, A4 is normal: neither factor is core-free
    assert not rec.h_core_free and not rec.k_core_free
    assert rec.provenance == "searched"


def test_verify_failure_keeps_exact_meet():
    a4 = alternating_group(4)
    v4 = sub(a4, 4)
    rec = verify_factorization(a4, v4, v4, group_id="A4")
    assert not rec.factorizes
    assert rec.orbit_count == 3
    assert rec.meet_order == 4   # V4 meet V4, computed from the point orbit


def test_verify_meet_agrees_with_brute_intersection():
    g = symmetric_group(5)
    s4 = sub(g, 24)
    f20 = sub(g, 20)
    rec = verify_factorization(g, s4, f20, group_id="S5")
    assert rec.factorizes
    assert rec.meet_order == meet_order(s4, f20) == 4
    assert intersection_group(s4, f20).order() == 4


def test_record_validation():
    with pytest.raises(ValueError):
        FactorizationRecord("G", 24, 8, 12, 1, True, True, True, True,
                            "searched")  # 8*12 != 24*1
    with pytest.raises(ValueError):
        FactorizationRecord("G", 24, 8, 12, 4, True, True, True, True,
                            "guessed")


def test_criteria_agree_on_success_and_failure():
    g = symmetric_group(4)
    d8 = sub(g, 8)
    a4 = alternating_group(4)
    crit = factorization_criteria(g, d8, a4)
    assert crit["order_equation"] and crit["order_inequality"]
    assert crit["h_transitive_on_k_cosets"] and crit["k_transitive_on_h_cosets"]
    assert crit["product_covers"] is True

    a4g = alternating_group(4)
    v4 = sub(a4g, 4)
    crit = factorization_criteria(a4g, v4, v4)
    assert not crit["order_equation"]
    assert not crit["h_transitive_on_k_cosets"]
    assert not crit["k_transitive_on_h_cosets"]
    assert crit["product_covers"] is False


def test_criteria_fuzz_consistency():
    """The transitivity tests and the product cover must agree pairwise on
    random subgroup pairs, factorizing or not."""
    g = symmetric_group(5)
    orders = [2, 4, 6, 8, 12, 20, 24, 60]
    rng = random.Random(7)
    for _ in range(12):
        h = sub(g, rng.choice(orders), seed=rng.randrange(50))
        k = sub(g, rng.choice(orders), seed=rng.randrange(50))
        crit = factorization_criteria(g, h, k)
        votes = {crit["order_equation"], crit["h_transitive_on_k_cosets"],
                 crit["k_transitive_on_h_cosets"], crit["product_covers"]}
        assert len(votes) == 1


def test_verify_is_conjugation_invariant():
    g = symmetric_group(5)
    s4 = sub(g, 24)
    f20 = sub(g, 20)
    rng = random.Random(3)
    for _ in range(5):
        x, y = g.random_element(rng), g.random_element(rng)
        rec = verify_factorization(g, s4.conjugate(x), f20.conjugate(y))
        assert rec.factorizes and rec.meet_order == 4


# ---------------------------------------------------------------------------
# divisibility audit, descent, lift

def test_audit_s4_example():
    g = symmetric_group(4)
    a4 = alternating_group(4)
    d8 = sub(g, 8)
    c3 = sub(g, 3)
    audit = divisibility_audit(g, a4, d8, c3)
    assert audit.all_hold()
    assert audit.h_meet_l == 4 and audit.k_meet_l == 3


def test_audit_rejects_non_normal():
    g = symmetric_group(4)
    d8 = sub(g, 8)
    c3 = sub(g, 3)
    with pytest.raises(ValueError):
        divisibility_audit(g, d8, d8, c3)


def test_descend_s4_to_d8():
    g = symmetric_group(4)
    d8 = sub(g, 8)
    c3 = sub(g, 3)
    rec = descend_factorization(g, d8, c3, d8, group_id="D8")
    assert rec.factorizes and rec.provenance == "derived"
    assert rec.orders == (8, 8, 1, 1)


def test_descend_requires_containment():
    g = symmetric_group(4)
    a4 = alternating_group(4)
    s3 = sub(g, 6)
    c3 = sub(g, 3)
    with pytest.raises(ValueError):
        descend_factorization(g, s3, c3, a4)


def test_lift_s5_example():
    g = symmetric_group(5)
    s4 = g.pointwise_stabilizer([4])
    f20 = sub(g, 20)
    s3 = PermGroup([list(p.images) + [3, 4]
                    for p in symmetric_group(3).generators], 5)
    assert lift_factorization(g, s4, f20, s3) is True


def test_lift_trivial_overgroup():
    g = symmetric_group(4)
    d8 = sub(g, 8)
    c3 = sub(g, 3)
    assert lift_factorization(g, g, c3, d8) is True


# ---------------------------------------------------------------------------
# searches

def orders_multiset(recs):
    return sorted(r.orders_signature() for r in recs)


def test_psl27_two_solvable_frozen(l27_two_solvable):
    recs = l27_two_solvable
    assert orders_multiset(recs) == [(7, 24, 1), (8, 21, 1), (21, 24, 3)]
    flags = {r.orders_signature(): r.psl2_generic for r in recs}
    assert flags == {(7, 24, 1): False, (8, 21, 1): True, (21, 24, 3): False}
    assert orders_multiset(table_view(recs)) == [(7, 24, 1), (21, 24, 3)]
    assert all(r.factorizes and r.provenance == "searched" for r in recs)
    # PSL2(7) is simple, so every proper subgroup is core-free
    assert all(r.h_core_free and r.k_core_free for r in recs)


def test_psl27_general_frozen(l27):
    recs = search_solvable_factorizations(l27, group_id="PSL2(7)")
    assert orders_multiset(recs) == [
        (7, 24, 1), (8, 21, 1), (21, 8, 1), (21, 24, 3), (24, 7, 1),
        (24, 21, 3)]
    generic = {r.orders_signature() for r in recs if r.psl2_generic}
    assert generic == {(8, 21, 1), (21, 8, 1)}


def test_psl211_two_solvable_generic_split(l211):
    recs = two_solvable_search(l211, group_id="PSL2(11)")
    # one tetrahedral and one dihedral record with identical orders
    assert orders_multiset(recs) == [(12, 55, 1), (12, 55, 1)]
    assert sorted(r.psl2_generic for r in recs) == [False, True]
    assert orders_multiset(table_view(recs)) == [(12, 55, 1)]


def test_psl211_general_contains_expected(l211):
    recs = search_solvable_factorizations(l211, group_id="PSL2(11)")
    sigs = {r.orders_signature() for r in recs}
    assert {(55, 12, 1), (11, 60, 1), (55, 60, 5)} <= sigs
    by_sig = {r.orders_signature(): r for r in recs}
    assert not by_sig[(11, 60, 1)].k_solvable   # icosahedral factor
    assert by_sig[(55, 60, 5)].meet_order == 5


def test_search_rejects_oversized_group_without_subgroups():
    with pytest.raises(ValueError):
        search_solvable_factorizations(psl3_3())


def test_searches_empty_on_solvable_groups():
    assert two_solvable_search(alternating_group(4)) == []
    assert two_solvable_search(cyclic_group(6)) == []


def test_two_solvable_search_dihedral():
    # D12 = C6 * C2 fails core-freeness, but S3 * C2 flavors survive
    recs = two_solvable_search(dihedral_group(6))
    for r in recs:
        assert r.h_core_free and r.k_core_free and r.factorizes


def test_generic_flag_predicate(l27, l27_two_solvable):
    rec = next(r for r in l27_two_solvable if r.psl2_generic)
    d8 = sub(l27, 8)
    f21 = sub(l27, 21)
    assert rec.orders_signature() == (8, 21, 1)
    assert is_psl2_generic_pair(l27, d8, f21)
    s4 = sub(l27, 24)
    c7 = sub(l27, 7)
    assert not is_psl2_generic_pair(l27, c7, s4)


def test_psl2_orders_scan():
    assert psl2_orders(60) == [4, 5]
    assert 7 in psl2_orders(168)
    assert psl2_orders(59) == []


# ---------------------------------------------------------------------------
# expected tables and the diff

def test_dataset_loads_and_validates():
    rows = load_expected_tables()
    ids = [r.row_id for r in rows]
    assert len(ids) == len(set(ids))
    assert all(r.table_id in TABLE_IDS for r in rows)
    for r in rows:
        for h in r.h_orders:
            assert r.g_order % h == 0
        assert r.g_order % r.k_order == 0


def test_dataset_alternative_orders():
    row = next(r for r in load_expected_tables() if r.row_id == "tab1.7")
    assert row.h_orders == (1053, 2106)
    assert row.k_signature is None


def test_expected_rows_filters():
    assert {r.group_id for r in expected_rows("tab4")} == {
        "PSL2(7)", "PSL2(11)", "PSL2(23)", "PSL3(3)", "PSp4(3)", "M11"}
    assert len(expected_rows("tab4", "PSL2(7)")) == 2
    with pytest.raises(ValueError):
        expected_rows("tab3")


def test_check_table_matched_and_findings(l27_two_solvable):
    diff = check_table("tab4", table_view(l27_two_solvable))
    assert diff.summary() == "MATCHED 2/2 EXPECTED"
    assert diff.ok() and not diff.findings

    raw = check_table("tab4", l27_two_solvable)
    assert raw.summary() == "MATCHED 2/2 EXPECTED"
    assert [r.orders_signature() for r in raw.findings] == [(8, 21, 1)]


def test_check_table_empty_records_reports_all_missing():
    diff = check_table("tab8", [])
    assert diff.summary() == "MATCHED 0/4 EXPECTED"
    assert not diff.ok()
    assert [r.row_id for r in diff.missing] == [
        "tab8.1a", "tab8.1b", "tab8.2a", "tab8.2b"]


def test_row_matching_swapped_orientation():
    sig24 = (24, True, False, 3, False)
    sig253 = (253, True, False, 2, False)
    rec = FactorizationRecord("PSL2(23)", 6072, 24, 253, 1, True, True,
                              True, True, "searched",
                              h_signature=sig24, k_signature=sig253)
    diff = check_table("tab4", [rec])
    assert diff.summary() == "MATCHED 1/1 EXPECTED"
    assert not diff.findings


def test_check_table_signature_mismatch_goes_missing():
    # right orders, wrong K structure: solvable where the row wants simple
    sig60 = (60, True, False, 2, False)
    rec = FactorizationRecord("PSL2(11)", 660, 11, 60, 1, True, True,
                              True, True, "searched",
                              h_signature=(11, True, False, 1, False),
                              k_signature=sig60)
    diff = check_table("tab1", [rec])
    assert not diff.matched
    assert len(diff.missing) == 2 and diff.findings == [rec]


# ---------------------------------------------------------------------------
# drivers

def test_records_for_table_psl27(l27):
    recs, inconclusive = records_for_table("tab4", "PSL2(7)")
    assert not inconclusive
    assert orders_multiset(recs) == [(7, 24, 1), (21, 24, 3)]
    assert check_table("tab4", recs).ok()


def test_records_for_table_psl211_general():
    recs, inconclusive = records_for_table("tab1", "PSL2(11)")
    assert not inconclusive
    diff = check_table("tab1", recs)
    assert diff.summary() == "MATCHED 2/2 EXPECTED"


def test_records_for_table_unknown_rows():
    assert records_for_table("tab8", "PSL2(7)") == ([], [])


def test_m11_tab4_search():
    recs, _ = records_for_table("tab4", "M11")
    assert orders_multiset(recs) == [(55, 144, 1)]
    assert check_table("tab4", recs).ok()


def test_m11_tab8_targeted():
    recs, inconclusive = records_for_table("tab8", "M11")
    assert not inconclusive
    got = {(r.orders_signature(), r.meet_order) for r in recs}
    assert got == {((11, 720, 1), 1), ((55, 720, 5), 5),
                   ((72, 660, 6), 6), ((144, 660, 12), 12)}
    assert all(r.provenance == "targeted" for r in recs)
    assert check_table("tab8", recs).summary() == "MATCHED 4/4 EXPECTED"


def test_psl3_3_tab4_search():
    recs, _ = records_for_table("tab4", "PSL3(3)")
    assert orders_multiset(recs) == [(13, 432, 1), (39, 144, 1), (39, 432, 3)]
    assert check_table("tab4", recs).summary() == "MATCHED 3/3 EXPECTED"


def test_psl2_23_tab4_search():
    recs, _ = records_for_table("tab4", "PSL2(23)")
    assert orders_multiset(recs) == [(24, 253, 1)]
    assert check_table("tab4", recs).ok()


@pytest.mark.slow
def test_psp4_3_tab9_targeted():
    recs, inconclusive = records_for_table("tab9", "PSp4(3)")
    assert not inconclusive
    got = {(r.orders_signature(), r.meet_order) for r in recs}
    assert got == {((108, 960, 4), 4), ((648, 960, 24), 24)}
    assert check_table("tab9", recs).summary() == "MATCHED 2/2 EXPECTED"


@pytest.mark.slow
def test_psp4_3_tab4_targeted():
    recs, inconclusive = records_for_table("tab4", "PSp4(3)")
    assert not inconclusive
    got = {(r.orders_signature(), r.meet_order) for r in recs}
    assert got == {((80, 648, 2), 2), ((160, 648, 4), 4)}
    assert check_table("tab4", recs).summary() == "MATCHED 2/2 EXPECTED"


def test_targeted_records_reports_inconclusive():
    g = symmetric_group(5)
    row = TableRow(table_id="tab8", row_id="tab8.x", group_id="S5",
                   g_order=120, h_orders=(8,), k_order=15,
                   h_solvable=True, k_solvable=True)
    recs, inconclusive = targeted_records(g, "S5", [row], trials=30,
                                          attempts=2)
    assert recs == [] and inconclusive == [row]


def test_threaded_search_matches_serial(l27, l27_two_solvable):
    recs = two_solvable_search(l27, group_id="PSL2(7)", threads=4)
    assert [r.signature() for r in recs] == [
        r.signature() for r in l27_two_solvable]
