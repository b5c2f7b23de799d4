import itertools

import pytest

from chromabound.extension import (
    ForbiddenScenario,
    NonUniqueMaximumError,
    SlotRule,
    SPrimeProfile,
    certify_table2,
    count_extensions,
    delta_prime,
    eventual_max,
    extension_bound_E,
    forbidden_slots,
    maximal_elements,
    moebius_eprime,
    run_comp1,
    scenarios,
)
from chromabound.graph import Graph, complement, enumerate_unlabeled
from chromabound.poly import IntPoly, Sign, parse_poly
from chromabound.reference import ROWS, row_by_name, row_graph

from test_partitions import set_partitions

K5 = Graph.complete(5)
E5 = Graph.empty(5)
K5_MINUS_E = Graph.from_edges(5, [e for e in K5.edges() if e != (3, 4)])


def test_profile():
    p = SPrimeProfile.from_graph(K5_MINUS_E)
    assert p.dprime == (0, 0, 0, 1, 1)
    assert p.sprime == 0
    assert SPrimeProfile.from_graph(E5).sprime == 0b11111


@pytest.mark.parametrize("rule", list(SlotRule))
def test_slots_edgeless_all_in_t(rule):
    assert forbidden_slots(SPrimeProfile.from_graph(E5), 0b11111, rule) == (1,) * 5


def test_slots_literal_rule():
    assert forbidden_slots(SPrimeProfile.from_graph(K5), 0, SlotRule.LITERAL) == (0,) * 5
    assert forbidden_slots(SPrimeProfile.from_graph(K5_MINUS_E), 0, SlotRule.LITERAL) == (0, 0, 0, 1, 1)
    assert forbidden_slots(SPrimeProfile.from_graph(E5), 0b00101, SlotRule.LITERAL) == (1, 2, 1, 2, 2)
    with pytest.raises(ValueError):
        forbidden_slots(SPrimeProfile.from_graph(K5), 1, SlotRule.LITERAL)


def test_slots_table_rule():
    prof = SPrimeProfile.from_graph(K5_MINUS_E)
    assert prof.t_domain() == 0b00111
    assert forbidden_slots(prof, 0) == (0, 0, 0, 1, 1)
    assert forbidden_slots(prof, 0b101) == (1, 0, 1, 1, 1)
    with pytest.raises(ValueError):
        forbidden_slots(prof, 0b01000)


def test_delta_prime_defaults_to_one():
    prof = SPrimeProfile.from_graph(K5)
    assert delta_prime(prof, 0) == 1
    assert delta_prime(SPrimeProfile.from_graph(E5), 0b11) == 4


@pytest.mark.parametrize("counts", [(1,), (2,), (1, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1), (2, 2, 2), (1, 2, 0, 2, 1)])
def test_scenario_count_matches_bruteforce(counts):
    slots = [(v, i) for v, c in enumerate(counts) for i in range(c)]
    brute = sum(
        1 for p in set_partitions(slots) if all(len({v for v, _ in blk}) == len(blk) for blk in p)
    )
    assert sum(1 for _ in scenarios(counts)) == brute


def test_scenario_rejects_same_vertex_class():
    with pytest.raises(ValueError):
        ForbiddenScenario((0, 0), (0, 0))


def test_count_extensions_small():
    k1 = Graph.empty(1)
    assert count_extensions(k1, ForbiddenScenario((0,), (0,))) == parse_poly("y")
    k2 = Graph.complete(2)
    same = count_extensions(k2, ForbiddenScenario((0, 1), (0, 0)))
    diff = count_extensions(k2, ForbiddenScenario((0, 1), (0, 1)))
    assert same == parse_poly("y^2 - y") and same(4) == 12
    assert diff(4) == 13


def direct_count(h, scenario, colours=5):
    """Exhaustive count with concrete colours 0..k-1 standing for the classes."""
    forb = scenario.forbidden(h.n)
    total = 0
    for col in itertools.product(range(colours), repeat=h.n):
        if any(col[u] == col[v] for u, v in h.edges()):
            continue
        if any(forb[v] >> col[v] & 1 for v in range(h.n)):
            continue
        total += 1
    return total


@pytest.mark.parametrize("name", ["C_5", "bull", "K_5-e", "co-(P_3 ∪ 2K_1)"])
def test_count_extensions_evaluation(name):
    h = row_graph(row_by_name(name))
    prof = SPrimeProfile.from_graph(h)
    T = prof.t_domain()
    for Tm in (0, T):
        scs = [sc for sc in scenarios(forbidden_slots(prof, Tm)) if sc.n_classes <= 5]
        # every scenario is cheap symbolically; the exhaustive check samples them
        for sc in scs[:: max(1, len(scs) // 6)]:
            assert count_extensions(h, sc)(4) == direct_count(h, sc)


def test_e_for_clique_without_constraints():
    prof = SPrimeProfile.from_graph(K5)
    assert extension_bound_E(prof, 0, SlotRule.LITERAL).poly == IntPoly.from_roots([-1, 0, 1, 2, 3])


def test_e_edgeless_all_monochromatic():
    prof = SPrimeProfile.from_graph(E5)
    e = extension_bound_E(prof, 0b11111)
    assert e.poly == IntPoly.monomial(5)
    assert e.n_scenarios == 52


def test_tie_break_and_strict_mode():
    h = row_graph(row_by_name("K_{1,4}+e"))
    prof = SPrimeProfile.from_graph(h)
    ties = [T for T in prof.subsets() if extension_bound_E(prof, T).tie_broken]
    assert ties
    with pytest.raises(NonUniqueMaximumError) as err:
        extension_bound_E(prof, ties[0], strict=True)
    assert len(err.value.candidates) >= 2


def test_maximal_elements_and_eventual_max():
    a, b, c = parse_poly("y^2"), parse_poly("y^2 + 1"), parse_poly("2y^2 - 100")
    assert set(maximal_elements([a, b, c])) == {b, c}
    assert eventual_max([a, b, c]) == c


def test_moebius_small():
    E = {0: parse_poly("y"), 1: parse_poly("y^2"), 2: parse_poly("3"), 3: parse_poly("y^3")}
    ep = moebius_eprime(E)
    assert ep[0] == E[0]
    assert ep[1] == E[1] - E[0]
    assert ep[3] == E[3] - E[1] - E[2] + E[0]


def test_certify_table2_examples():
    target = parse_poly("y^8 - 3y^7")
    w, ok = certify_table2(target)
    assert w.is_zero() and ok
    w, ok = certify_table2(row_by_name("5K_1").r_poly)
    assert w == row_by_name("5K_1").w_poly and ok
    w, ok = certify_table2(row_by_name("K_5").r_poly)
    assert w == parse_poly("2z^7 + 41z^6 + 367z^5 + 1871z^4 + 5851z^3 + 11044z^2 + 11280z + 4544") and ok


def test_reference_tables_consistent():
    # the two reference tables agree with each other through W = shift(y^7(y-3) - R)
    for row in ROWS:
        w, ok = certify_table2(row.r_poly)
        assert w == row.w_poly and ok, row.name


def test_reference_labels_cover_all_classes():
    from chromabound.graph import canonical_key
    from chromabound.reference import label_map

    assert set(label_map()) == {canonical_key(g) for g in enumerate_unlabeled(5)}
    assert row_graph(row_by_name("co-P_5")) == complement(row_graph(row_by_name("P_5")))


def test_literal_rule_cannot_reach_clique_row():
    # the clique row exceeds the exact count under the literal rule, so that rule is not the tabulated one
    rep = run_comp1(K5, SlotRule.LITERAL)
    assert [r.T for r in rep.records] == [0]
    assert rep.r_all == IntPoly.from_roots([-1, 0, 1, 2, 3]) * IntPoly.monomial(3)
    assert rep.r_all != row_by_name("K_5").r_poly
    assert row_by_name("K_5").r_poly(4) > rep.r_all(4)


@pytest.mark.parametrize("name", ["5K_1", "C_5", "K_5", "bull", "co-(C_4 ∪ K_1)"])
def test_rows(name, comp1_reports):
    rep = next(r for r in comp1_reports if r.name == name)
    assert rep.R == row_by_name(name).r_poly
    assert rep.W == row_by_name(name).w_poly
    assert rep.verdict


def test_all_reports_certify_both_sums(comp1_reports):
    assert len(comp1_reports) == 34
    assert all(r.verdict and r.verdict_all for r in comp1_reports)


def test_moebius_round_trip_everywhere(comp1_reports):
    for rep in comp1_reports:
        E = {rec.T: rec.E.poly for rec in rep.records}
        for rec in rep.records:
            back = sum((o.Eprime for o in rep.records if o.T & ~rec.T == 0), IntPoly())
            assert back == E[rec.T]


def test_every_eprime_has_a_sign(comp1_reports):
    for rep in comp1_reports:
        for rec in rep.records:
            assert rec.sign.sign in (Sign.POSITIVE, Sign.NEGATIVE), (rep.name, rec.label)


def test_c5_negative_term_vanishes_at_four_and_five(comp1_reports):
    rep = next(r for r in comp1_reports if r.name == "C_5")
    neg = [rec for rec in rep.records if rec.sign.sign is Sign.NEGATIVE]
    assert any(rec.Eprime == -IntPoly.from_roots([4, 5]) for rec in neg)
