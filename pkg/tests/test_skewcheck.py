import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import FAMILIES, corpus_system, family_system, random_coefficients, random_system
from skewpbw.coeff import as_scalar, evaluate, render_scalar
from skewpbw.diamond import check_pbw
from skewpbw.errors import ClassificationError, ShapeError, VerdictRequiredError
from skewpbw.freealg import NCPoly
from skewpbw.presentio import build_system, parse_presentation
from skewpbw.reduce import commutative_system
from skewpbw.skewcheck import (
    CONDITIONS,
    LABELS,
    PAIRS,
    SYMBOLIC_CONTEXT,
    SkewCoefficients,
    case_letter,
    check_conditions,
    classify,
    condition,
    derive_conditions,
    extract_coefficients,
    rules_from_coefficients,
    symbolic_system,
    verify_conditions,
)


def r_values(c):
    return {(t, pair): v for (t, pair), v in c.r.items() if v != 0}


def test_extract_dispin():
    c = extract_coefficients(corpus_system("dispin")[1])
    assert (c.alpha_inv, c.beta, c.gamma_inv) == (1, -1, 1)
    assert r_values(c) == {(3, (2, 3)): -1, (2, (1, 3)): 1, (1, (1, 2)): -1}
    assert len(c.r) == 12


def test_extract_ex3():
    _, q = corpus_system("ex3")
    c = extract_coefficients(q)
    alpha, beta = q.ctx.param("alpha"), q.ctx.param("beta")
    # the file's alpha sits in the x2x1 rule, so it plays the role of gamma^-1
    assert (c.alpha_inv, c.beta, c.gamma_inv) == (1, beta, alpha)
    assert r_values(c) == {(1, (1, 2)): 1, (3, (1, 3)): 1}


def test_extract_commutative():
    c = extract_coefficients(commutative_system(3))
    assert (c.alpha_inv, c.beta, c.gamma_inv) == (1, 1, 1)
    assert r_values(c) == {}


def test_extract_shape_errors():
    q = build_system(parse_presentation("generators: x, y, z; z*y = y*z + x^2; z*x = x*z; y*x = x*y"))
    assert check_pbw(q).is_pbw
    with pytest.raises(ShapeError, match="x3x2"):
        extract_coefficients(q)
    with pytest.raises(ShapeError):
        extract_coefficients(commutative_system(4))


@settings(max_examples=100)
@given(st.integers(0, 10_000), st.sampled_from([0.0, 0.5, 0.9]))
def test_extract_rebuild_roundtrip(seed, zero_prob):
    c = random_coefficients(random.Random(seed), zero_prob)
    assert extract_coefficients(rules_from_coefficients(c)) == c


def test_conditions_examples():
    assert check_conditions(extract_coefficients(corpus_system("dispin")[1])).ok
    report = check_conditions(extract_coefficients(corpus_system("quantum3space")[1]))
    assert report.ok
    assert all(r.lhs == 0 and r.rhs == 0 for r in report.records)
    assert [r.label for r in report.records] == list(LABELS)


def test_conditions_ex3():
    # the overlap itself fails only in its y*z and z coefficients
    _, q = corpus_system("ex3")
    report = check_conditions(extract_coefficients(q))
    assert not report.ok
    assert report.violated() == ["moder", "pss3"]
    assert (report["moder"].lhs, report["moder"].rhs) == (1, 0)
    assert render_scalar(report["pss3"].lhs) == "alpha" and report["pss3"].rhs == 1
    assert report["delfi"].satisfied


def test_misprinted_delfi_rejects_a_pbw_family():
    # z^2 coefficient of the overlap when r3_13 != 0 and r3_12 = 0
    q = family_system("e.v")
    assert check_pbw(q).is_pbw
    c = extract_coefficients(q)
    cond = condition("delfi")
    values, one = c.bindings(), Fraction(1)
    assert evaluate(cond.lhs_value, values, one) == evaluate(cond.rhs_value, values, one)
    misprint_lhs, misprint_rhs = cond.misprint_values
    assert evaluate(misprint_lhs, values, one) != evaluate(misprint_rhs, values, one)


def test_derive_conditions():
    derived = derive_conditions()
    assert [d.label for d in derived] == list(LABELS)
    assert {d.monomial for d in derived} == {(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 1), (2, 2), (3, 3), ()}
    rows = {d.label: d.render() for d in derived}
    assert rows["doggg"] == "gamma^-1 * r2_13 = alpha^-1 * r2_13"
    assert rows["delfi"] == "r3_12 = alpha^-1 * beta * r3_12"
    witness = check_pbw(symbolic_system()).witnesses[0]
    ctx = SYMBOLIC_CONTEXT
    top = ctx.param("gamma") ** -1 * ctx.param("beta") * ctx.param("alpha") ** -1
    assert witness.g[(1, 2, 3)] == witness.h[(1, 2, 3)] == top
    assert (1, 2, 3) not in witness.difference


def test_verify_conditions():
    rows = verify_conditions(derive_conditions())
    assert all(r.matches and r.exact for r in rows)
    flagged = {r.label for r in rows if r.misprint_matches is not None}
    assert flagged == {"gordito", "moder", "delfi"}
    assert all(r.misprint_matches is False for r in rows if r.label in flagged)


def test_conditions_table_parses():
    for cond in CONDITIONS:
        assert cond.lhs_value.ctx == SYMBOLIC_CONTEXT
        assert cond.lhs_value - cond.rhs_value != 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([0.3, 0.7, 0.95]))
def test_derived_identities_specialize_to_check_conditions(seed, zero_prob):
    c = random_coefficients(random.Random(seed), zero_prob)
    values, one = c.bindings(), Fraction(1)
    report = check_conditions(c)
    for d, rec in zip(derive_conditions(), report.records):
        assert evaluate(d.lhs, values, one) == rec.lhs
        assert evaluate(d.rhs, values, one) == rec.rhs


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([0.5, 0.8, 0.95]))
def test_conditions_agree_with_overlap(seed, zero_prob):
    c, q = random_system(random.Random(seed), zero_prob)
    assert check_conditions(c).ok == check_pbw(q).is_pbw


def test_classify_examples():
    _, q = corpus_system("dispin")
    cl = classify(extract_coefficients(q), q)
    assert (cl.case, cl.subcase) == ("b", "b.i")
    _, q = corpus_system("quantum3space")
    cl = classify(extract_coefficients(q), q)
    assert cl.case == "a" and (cl.alpha, cl.beta, cl.gamma) == (2, 3, 5)
    _, q = corpus_system("e_i")
    cl = classify(extract_coefficients(q), q)
    assert (cl.case, cl.subcase) == ("e", "e.i")


@pytest.mark.parametrize("label", sorted(FAMILIES))
def test_classify_families(label):
    q = family_system(label)
    cl = classify(extract_coefficients(q), q)
    assert cl.case == label[0]
    if "." in label:
        assert cl.subcase == label


def test_classify_refuses_non_pbw():
    _, q = corpus_system("ex3", alpha=2, beta=3)
    with pytest.raises(VerdictRequiredError):
        classify(extract_coefficients(q), q)


def test_classify_symbolic_is_indeterminate():
    _, q = corpus_system("woronowicz")
    with pytest.raises(ClassificationError) as err:
        classify(extract_coefficients(q), q)
    assert any(p.startswith("alpha = 1") for p in err.value.predicates)


def test_case_letter_guards():
    F = Fraction
    assert case_letter(F(2), F(3), F(5)) == "a"
    assert case_letter(F(1), F(-1), F(1)) == "b"
    assert case_letter(F(2), F(3), F(2)) == "c"
    assert case_letter(F(2), F(2), F(2)) == "d"
    assert case_letter(F(1), F(1), F(1)) == "e"
    # two distinct values but neither (b) nor (c) shape
    for units in ((F(2), F(2), F(3)), (F(1), F(1), F(2)), (F(1), F(2), F(2))):
        with pytest.raises(ClassificationError):
            case_letter(*units)


def test_case_letter_ignores_tails():
    rng = random.Random(1)
    checked = 0
    for label in FAMILIES:
        base = extract_coefficients(family_system(label))
        for _ in range(30):
            r = dict(base.r)
            key = (rng.randint(0, 3), rng.choice(PAIRS))
            r[key] = r[key] + rng.choice((-1, 1, 2))
            c = SkewCoefficients(None, base.alpha_inv, base.beta, base.gamma_inv, r)
            q = rules_from_coefficients(c)
            if check_pbw(q).is_pbw:
                assert classify(c, q).case == label[0]
                checked += 1
    assert checked > 20
