import json
from dataclasses import replace
from fractions import Fraction
from math import gcd

import pytest

from concord.delta import (
    EXAMPLES,
    CertificateEntry,
    DeltaResult,
    IndependenceCertificate,
    TableMismatch,
    Unsupported,
    applicable_routes,
    delta_pn,
    independence_certificate,
    make_table,
    signature_congruent,
    verify_certificate,
)
from concord.dinvariant import StateBudgetExceeded, d_disjoint_sum
from concord.knotpoly import TorusKnot, torus_t0
from concord.numtheory import ExclusionSets, PrimePower, prime_power_decompose
from concord.plumbing import analyze_graph, build_brieskorn_plumbing
from concord.topology import Brieskorn, BrieskornTriple, SurgeryDescription

T23 = TorusKnot(2, 3)


def is_pp(n):
    return n >= 2 and prime_power_decompose(n) is not None


# -- single values ------------------------------------------------------------


def test_trefoil_five():
    r = delta_pn(T23, 5)
    assert (r.value, r.route) == (4, "torsion")
    assert r.manifold == Brieskorn(BrieskornTriple(2, 3, 5))
    assert r.d_value == 2


def test_t25_seven_by_plumbing():
    r = delta_pn(TorusKnot(2, 5), 7, route="plumbing")
    assert r.value == 0
    assert r.manifold.triple == BrieskornTriple(2, 5, 7)


def test_trefoil_eight_by_twist():
    r = delta_pn(T23, PrimePower(2, 3))
    assert (r.value, r.route) == (1, "twist")
    assert isinstance(r.manifold, SurgeryDescription)
    assert r.d_value == Fraction(1, 2)


def test_t57_eight():
    # reference table value; the engine gives 4 here
    r = delta_pn(TorusKnot(5, 7), 8)
    assert r.route == "plumbing"
    assert r.value == 8


def test_trefoil_power_of_two_parity():
    for n in range(1, 13):
        assert delta_pn(T23, 2 ** n).value == (1 if n % 2 else 3)


def test_t79_worked_values():
    k = TorusKnot(7, 9)
    for N in (64, 127, 379, 631, 757):
        assert delta_pn(k, N).value == 0
    # the 63n-1 covers follow the 4 t0 normalisation
    for N in (125, 251, 503, 881):
        assert delta_pn(k, N).value == 4 * torus_t0(k) == 32


def test_result_checks_value():
    with pytest.raises(ArithmeticError):
        DeltaResult(3, "torsion", Brieskorn(BrieskornTriple(2, 3, 5)), Fraction(1))


# -- errors -------------------------------------------------------------------


def test_unsupported_inputs():
    with pytest.raises(Unsupported):
        delta_pn(TorusKnot(2, 5), 4)
    with pytest.raises(Unsupported):
        delta_pn(T23, 3)
    with pytest.raises(Unsupported):
        delta_pn(T23, 6)
    with pytest.raises(Unsupported):
        delta_pn(TorusKnot(1, 5), 3)
    with pytest.raises(Unsupported):
        delta_pn(TorusKnot(2, 5), 3, route="torsion")
    with pytest.raises(ValueError):
        delta_pn(T23, 5, route="magic")


def test_unsupported_is_a_value_error():
    assert issubclass(Unsupported, ValueError)


def test_budget_propagates():
    with pytest.raises(StateBudgetExceeded):
        delta_pn(TorusKnot(2, 5), 7, max_states=0)


def test_applicable_routes():
    assert applicable_routes(T23, PrimePower(5, 1)) == ["torsion", "plumbing"]
    assert applicable_routes(TorusKnot(2, 5), PrimePower(3, 1)) == ["plumbing"]
    assert applicable_routes(T23, PrimePower(2, 4)) == ["twist"]
    assert applicable_routes(TorusKnot(2, 5), PrimePower(2, 1)) == []


# -- properties ---------------------------------------------------------------


def route_cases():
    out = []
    for a in range(2, 36):
        for b in range(a + 1, 36):
            if a * b > 35 or gcd(a, b) != 1:
                continue
            for N in range(2, 61):
                if is_pp(N) and gcd(N, a * b) == 1 and ((N + 1) % (a * b) == 0 or (N - 1) % (a * b) == 0):
                    out.append((a, b, N))
    return out


def test_route_agreement():
    cases = route_cases()
    assert len(cases) > 20
    for a, b, N in cases:
        k = TorusKnot(a, b)
        t = delta_pn(k, N, route="torsion")
        p = delta_pn(k, N, route="plumbing")
        assert t.value == p.value, (a, b, N)
        assert t.manifold == p.manifold


def symmetry_triples():
    out = []
    for a in range(2, 21):
        for b in range(a + 1, 21):
            for c in range(b + 1, 21):
                if gcd(a, b) == gcd(a, c) == gcd(b, c) == 1 and is_pp(a) and is_pp(b) and is_pp(c):
                    out.append((a, b, c))
    return out


def test_cover_symmetry_example():
    assert delta_pn(TorusKnot(2, 5), 3).value == 4
    assert delta_pn(TorusKnot(2, 3), 5).value == 4
    assert delta_pn(TorusKnot(3, 5), 2).value == 4


def test_cover_symmetry_triples():
    triples = symmetry_triples()
    assert len(triples) > 50
    for a, b, c in triples:
        vals = {delta_pn(TorusKnot(a, b), c).value, delta_pn(TorusKnot(a, c), b).value, delta_pn(TorusKnot(b, c), a).value}
        assert len(vals) == 1, (a, b, c, vals)


def test_signature_congruence_on_brieskorn_routes():
    seen = 0
    for a, b, c in symmetry_triples():
        for knot, N in ((TorusKnot(a, b), c), (TorusKnot(a, c), b), (TorusKnot(b, c), a)):
            r = delta_pn(knot, N)
            assert r.route in ("torsion", "plumbing")
            assert signature_congruent(knot, N, r.value), (knot, N, r.value)
            seen += 1
    for a, b, N in route_cases():
        assert signature_congruent(TorusKnot(a, b), N, delta_pn(TorusKnot(a, b), N).value)
    assert seen > 150


def test_signature_congruence_detects_a_wrong_value():
    assert signature_congruent(T23, 5, 4)
    # the check is modulo 4, so only the residue is tested
    assert signature_congruent(T23, 5, 0)
    assert not any(signature_congruent(T23, 5, v) for v in (1, 2, 3, 6))


def test_disjoint_sum_shadow():
    pairs = [
        ((2, 3, 5), (2, 3, 7)),
        ((2, 3, 5), (2, 3, 5)),
        ((2, 5, 7), (2, 3, 11)),
        ((2, 5, 9), (2, 3, 7)),
        ((2, 3, 13), (3, 4, 5)),
        ((2, 7, 9), (2, 3, 5)),
        ((3, 4, 7), (2, 5, 11)),
        ((2, 3, 17), (2, 9, 11)),
        ((3, 5, 7), (2, 3, 5)),
        ((2, 5, 13), (3, 5, 8)),
    ]
    for t1, t2 in pairs:
        g1 = build_brieskorn_plumbing(BrieskornTriple(*t1))
        g2 = build_brieskorn_plumbing(BrieskornTriple(*t2))
        assert analyze_graph(g1).bad_vertex_count + analyze_graph(g2).bad_vertex_count <= 2
        # read each cover as Sigma(a, b, c) = cover of T(a, b) of order c
        d1 = delta_pn(TorusKnot(t1[0], t1[1]), t1[2], route="plumbing").value
        d2 = delta_pn(TorusKnot(t2[0], t2[1]), t2[2], route="plumbing").value
        assert 2 * d_disjoint_sum(g1, g2).only() == d1 + d2


def test_integrality_over_tables():
    for ex in EXAMPLES:
        for cell in make_table(ex, strict=False).cells:
            assert isinstance(cell.value, int)


# -- tables -------------------------------------------------------------------


@pytest.mark.parametrize("example", sorted(EXAMPLES))
def test_tables_reproduce(example):
    table = make_table(example)
    assert not table.mismatches
    for N, val in EXAMPLES[example].cells.items():
        assert table.as_dict()[N] == val


def test_mismatch_lists_each_cell(monkeypatch):
    import concord.delta as dl

    ex = dl.EXAMPLES[1]
    monkeypatch.setitem(dl.EXAMPLES, 1, replace(ex, cells={**ex.cells, 5: 2}))
    with pytest.raises(TableMismatch) as exc:
        make_table(1)
    assert [c.cover for c in exc.value.table.mismatches] == [5]
    assert "expected 2, got 4" in str(exc.value)


def test_example_two_values():
    assert delta_pn(TorusKnot(2, 5), 9).value == 4
    assert delta_pn(TorusKnot(2, 5), 11).value == 0
    assert {N: delta_pn(TorusKnot(2, 5), N).value for N in (3, 7, 13, 17)} == {3: 4, 7: 0, 13: 4, 17: 0}


def test_example_eight_blank_is_derived():
    table = make_table(8)
    derived = [c for c in table.cells if c.derived]
    assert derived and all(c.value == 4 * torus_t0(TorusKnot(5, 9)) == 24 for c in derived)
    assert "derived" in table.to_markdown()


def test_table_outputs():
    table = make_table(1)
    data = json.loads(table.to_json())
    assert data["example"] == 1
    assert table.to_csv().splitlines()[0].startswith("label")
    assert "delta_5" in table.to_markdown()


def test_unknown_example():
    with pytest.raises(ValueError):
        make_table(9)


# -- certificates -------------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7, 11])
@pytest.mark.parametrize("count", [1, 2])
def test_certificate_round_trip(p, count):
    c = independence_certificate(p, count)
    again = IndependenceCertificate.from_json(c.to_json())
    assert again == c
    report = verify_certificate(again)
    assert report and not report.failures
    assert len(c.entries) == count


def test_certificate_examples():
    c3 = independence_certificate(3, 1)
    assert c3.exclusions == ExclusionSets(frozenset({0, 1}), frozenset({0}))
    assert c3.entries == (CertificateEntry(2, 81, 2, 41, 1),)
    assert independence_certificate(5, 1).entries == (CertificateEntry(1, 25, 2, 13, 1),)
    c7 = independence_certificate(7, 1)
    assert c7.exclusions.mersenne_set == frozenset({0})
    assert c7.entries == (CertificateEntry(1, 49, 2, 25, 1),)


def test_certificate_triangular_pattern():
    c = independence_certificate(3, 2)
    for i, ei in enumerate(c.entries):
        for j, ej in enumerate(c.entries):
            if j >= i:
                v = delta_pn(TorusKnot(ei.a, ei.b), ej.m).value
                assert (v != 0) == (i == j)


def test_tampered_certificates_fail():
    c = independence_certificate(3, 1)
    e = c.entries[0]
    bad_pair = replace(c, entries=(replace(e, a=2, b=40),))
    assert not verify_certificate(bad_pair)
    in_fermat = replace(c, entries=(CertificateEntry(1, 9, 2, 5, 1),))
    report = verify_certificate(in_fermat)
    assert not report
    assert any("exclusion" in f for f in report.failures)
    wrong_exc = replace(c, exclusions=ExclusionSets(frozenset(), frozenset()))
    assert not verify_certificate(wrong_exc)


def test_certificate_count_bounds():
    with pytest.raises(ValueError):
        independence_certificate(3, 0)
    with pytest.raises(ValueError):
        independence_certificate(3, 5)
