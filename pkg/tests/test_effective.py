import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effcone.cone import ConeDesc, dd_convert
from effcone.divisor import DivisorClass
from effcone.effective import (
    Certificate,
    GeneratorLabel,
    decompose_paper_recipe,
    facet_audit,
    incidence_report,
    inequality_list,
    is_effective,
    ray_list,
    verify_certificate,
)
from effcone.errors import NotEffectiveError, UnsupportedError
from effcone.kernel import nonneg_combination

from oracles import brute_force_facets


def D(d, *m):
    return DivisorClass(d, list(m))


@pytest.mark.parametrize("s,count", [(0, 1), (1, 2), (2, 4), (3, 7), (4, 16), (5, 42)])
def test_inequality_counts(s, count):
    assert len(inequality_list(s)) == count


def test_inequality_list_s2():
    assert {q.normal for q in inequality_list(2)} == {(1, 0, 0), (1, -1, 0), (1, 0, -1), (1, -1, -1)}


@pytest.mark.parametrize("s,count", [(0, 1), (1, 2), (2, 4), (3, 7), (4, 12), (5, 20)])
def test_ray_counts(s, count):
    assert len(ray_list(s)) == count


def test_ray_list_s2_and_s0():
    assert {g.name for g, _ in ray_list(2)} == {"E_1", "E_2", "H-E_1", "H-E_2"}
    assert [v for _, v in ray_list(0)] == [(1,)]


def test_ray_vectors():
    rays = dict((g.name, v) for g, v in ray_list(3))
    assert rays["E_2"] == (0, 0, -1, 0)
    assert rays["H-E_1"] == (1, 1, 0, 0)
    assert rays["Q_123"] == (2, 1, 1, 1)


@pytest.mark.parametrize("s", [6, 7])
def test_unsupported_s(s):
    with pytest.raises(UnsupportedError, match="s <= 5"):
        inequality_list(s)
    with pytest.raises(UnsupportedError):
        ray_list(s)
    with pytest.raises(UnsupportedError):
        is_effective(DivisorClass(1, [0] * s))


def test_generator_label_round_trip():
    for s in range(6):
        for g, v in ray_list(s):
            assert GeneratorLabel.parse(g.name) == g
            assert g.divisor(s).vector() == tuple(Fraction(x) for x in v)


def test_quadric_certificate():
    ok, cert = is_effective(D(2, 1, 1, 1))
    assert ok
    assert [(g.name, c) for g, c in cert.terms] == [("Q_123", 1)]
    assert verify_certificate(cert)


def test_violation_s4():
    ok, cert = is_effective(D(3, 2, 2, 2, 2))
    assert not ok
    assert cert.violated.label == "(4.4)"
    assert "2(m1+..+m4) <= 3d (16 > 9)" in cert.describe()
    assert verify_certificate(cert)


def test_violation_cubic_through_five_lines():
    ok, cert = is_effective(D(3, 1, 1, 1, 1, 1))
    assert not ok
    assert cert.violated.label == "(6.5)"
    assert "(10 > 9)" in cert.describe()


def test_exceptional_generator():
    ok, cert = is_effective(D(0, 0, 0, 0, 0, -1))
    assert ok
    assert [(g.name, c) for g, c in cert.terms] == [("E_5", 1)]


def test_negative_multiplicity_is_fixed_part():
    # D + m_i E_i with m_i < 0 decides effectivity
    assert is_effective(D(1, -3, 1))[0]
    assert not is_effective(D(1, -3, 2))[0]


def test_verify_hand_built():
    good = Certificate(target=D(1, 1, 0, 0), terms=((GeneratorLabel.parse("H-E_1"), Fraction(1)),))
    bad = Certificate(target=D(1, 1, 1, 0), terms=((GeneratorLabel.parse("H-E_1"), Fraction(1)),))
    assert verify_certificate(good)
    assert not verify_certificate(bad)


def test_verify_rejects_negative_coefficient():
    cert = Certificate(target=D(-1, -1, 0), terms=((GeneratorLabel.parse("H-E_1"), Fraction(-1)),))
    assert not verify_certificate(cert)


def test_certificate_json():
    _, cert = is_effective(D(2, 1, 1, 1))
    data = cert.to_dict()
    assert data == {"target": {"s": 3, "d": "2", "mults": ["1", "1", "1"]},
                    "terms": [{"generator": "Q_123", "coeff": "1"}], "violated": None}
    assert Certificate.from_dict(json.loads(json.dumps(data))) == cert
    _, neg = is_effective(D(3, 2, 2, 2, 2))
    assert Certificate.from_dict(neg.to_dict()) == neg


@pytest.mark.parametrize("target,expected", [
    (D(2, 1, 1), [("H-E_1", 1), ("H-E_2", 1)]),
    (D(3, 1, 1, 1, 1), [("H-E_4", 1), ("Q_123", 1)]),
    (D(2, 1, 1, 1), [("Q_123", 1)]),
])
def test_recipe_examples(target, expected):
    cert = decompose_paper_recipe(target)
    assert sorted((g.name, c) for g, c in cert.terms) == sorted(expected)
    assert verify_certificate(cert)


def test_recipe_errors():
    with pytest.raises(NotEffectiveError):
        decompose_paper_recipe(D(3, 2, 2, 2, 2))
    with pytest.raises(UnsupportedError):
        decompose_paper_recipe(D(1, 0, 0, 0, 0, 0))


def test_recipe_grid_s4():
    for d in range(0, 5):
        for m in itertools.product(range(-1, 4), repeat=4):
            target = DivisorClass(d, list(m))
            if is_effective(target)[0]:
                assert verify_certificate(decompose_paper_recipe(target))


def test_excess_of_overlapping_triples_unchanged_after_quadric():
    # subtracting Q_123 changes d by 2 and m_1, m_2, m_3 by 1 each
    for d, *m in itertools.product(range(5), repeat=5):
        after = DivisorClass(d, m) - DivisorClass(2, [1, 1, 1, 0])
        for t in [(1, 2, 4), (1, 3, 4), (2, 3, 4)]:
            before = sum(m[i - 1] for i in t) - d
            assert sum(after.mults[i - 1] for i in t) - after.d == before


@pytest.mark.parametrize("s", [0, 1, 2, 3, 4])
def test_duality_exact(s):
    audit = facet_audit(s)
    assert audit.rays_match and audit.facets_match
    assert not audit.missing


def test_brute_force_facets_of_ray_cone_s3():
    facets = brute_force_facets([v for _, v in ray_list(3)])
    assert set(facets) == {q.normal for q in inequality_list(3)}


def test_s5_listed_inequalities_are_strict_subset_of_facets():
    audit = facet_audit(5)
    assert len(audit.facets) == 47
    assert len(audit.genuine) == 42 and not audit.redundant
    assert {f[1:] for f in audit.missing} == set(itertools.permutations((-2, -2, -2, -2, 0)))
    assert all(f[0] == 3 for f in audit.missing)
    # a class that satisfies every listed inequality but is outside the ray cone
    witness = (5, 2, 2, 2, 2, -1)
    target = DivisorClass(witness[0], list(witness[1:]))
    assert all(q.holds(target) for q in inequality_list(5))
    assert not nonneg_combination(witness, [v for _, v in ray_list(5)]).feasible
    # after dropping the fixed part E_5 the decision is consistent
    ok, cert = is_effective(target)
    assert not ok and cert.violated.label == "(6.5)"


def test_s5_missing_facets_are_implied_on_nonnegative_classes():
    # with m_j >= 0, 3d - 2 sum_{k != j} m_k >= 3d - 2 sum m
    full = next(q for q in inequality_list(5) if q.label == "(6.5)")
    for f in facet_audit(5).missing:
        diff = [a - b for a, b in zip(f, full.normal)]
        assert diff[0] == 0 and all(x >= 0 for x in diff[1:])


@pytest.mark.parametrize("s", [2, 3, 4, 5])
def test_incidence_all_extremal(s):
    report = incidence_report(s)
    assert len(report) == len(ray_list(s))
    assert all(e.extremal for e in report)
    for e in report:
        if e.listed is not None:
            assert e.listed_subset_of_tight and e.listed_pins_ray


def test_incidence_examples():
    e1 = next(e for e in incidence_report(2) if e.generator.name == "E_1")
    assert {"(1.3)", "(2.3)[2]"} <= set(e1.tight)
    he1 = next(e for e in incidence_report(3) if e.generator.name == "H-E_1")
    assert {"(2.3)[1]", "(3.3)[1,2]", "(3.3)[1,3]"} <= set(he1.tight)


def test_incidence_out_of_range():
    with pytest.raises(UnsupportedError):
        incidence_report(1)


def test_sweep_agreement_small():
    rng = random.Random(7)
    for s in range(2, 6):
        rays = [v for _, v in ray_list(s)]
        for _ in range(300):
            v = [rng.randint(-20, 20) for _ in range(s + 1)]
            target = DivisorClass(v[0], v[1:])
            ok, cert = is_effective(target)
            clamped = [v[0]] + [max(x, 0) for x in v[1:]]
            assert ok == nonneg_combination(clamped, rays).feasible
            assert verify_certificate(cert)


coef = st.fractions(min_value=-12, max_value=12, max_denominator=4)


@st.composite
def classes(draw):
    s = draw(st.integers(0, 5))
    return DivisorClass(draw(coef), [draw(coef) for _ in range(s)])


@given(classes(), st.fractions(min_value=Fraction(1, 10), max_value=10))
@settings(max_examples=200, deadline=None)
def test_scaling_invariance(target, lam):
    assert is_effective(target)[0] == is_effective(lam * target)[0]


@given(classes(), st.data())
@settings(max_examples=200, deadline=None)
def test_exceptional_monotonicity(target, data):
    if target.s == 0 or not is_effective(target)[0]:
        return
    i = data.draw(st.integers(1, target.s))
    e = data.draw(st.fractions(min_value=0, max_value=10))
    assert is_effective(target + e * DivisorClass.exceptional(i, target.s))[0]


@given(classes())
@settings(max_examples=200, deadline=None)
def test_certificates_verify(target):
    ok, cert = is_effective(target)
    assert cert.effective == ok
    assert verify_certificate(cert)
    if ok and target.s <= 4:
        assert verify_certificate(decompose_paper_recipe(target))


@pytest.mark.parametrize("s", range(6))
def test_dd_idempotent_on_stored_cones(s):
    for c in (ConeDesc.from_rays([v for _, v in ray_list(s)]),
              ConeDesc.from_inequalities([q.normal for q in inequality_list(s)])):
        once = dd_convert(c)
        assert dd_convert(once) == once
