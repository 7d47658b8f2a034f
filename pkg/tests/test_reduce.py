import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import all_words, corpus_system, pbw_corpus, random_poly, random_system
from skewpbw.diamond import check_pbw
from skewpbw.errors import PreconditionError, SearchBudgetError, SkewSystemError
from skewpbw.freealg import LT, NCPoly, is_standard, word_cmp_deglex
from skewpbw.presentio import parse_polynomial
from skewpbw.reduce import (
    Rule,
    apply_reduction,
    commutative_system,
    is_irreducible,
    normal_forms_exhaustive,
    red,
    stred,
    validate_skew_system,
)

XYZ = ("x", "y", "z")


def P(text, system, names=XYZ):
    return parse_polynomial(text, names, system.ctx)


@pytest.fixture(scope="module")
def dispin():
    return corpus_system("dispin")[1]


@pytest.fixture(scope="module")
def woronowicz():
    return corpus_system("woronowicz")[1]


def dispin_rules():
    return [
        Rule((3, 2), NCPoly(3, {(2, 3): 1, (3,): -1})),
        Rule((3, 1), NCPoly(3, {(1, 3): -1, (2,): 1})),
        Rule((2, 1), NCPoly(3, {(1, 2): 1, (1,): -1})),
    ]


def test_validate_examples(dispin):
    assert validate_skew_system(dispin_rules(), 3) == dispin
    with pytest.raises(SkewSystemError) as err:
        validate_skew_system([r for r in dispin_rules() if r.lhs != (3, 1)], 3)
    assert err.value.pair == (3, 1)
    bad = dispin_rules()[:2] + [Rule((2, 1), NCPoly(3, {(1, 2): 1, (2, 3): 1}))]
    with pytest.raises(SkewSystemError) as err:
        validate_skew_system(bad, 3)
    assert err.value.pair == (2, 1)
    assert word_cmp_deglex((1, 2), (2, 3)) == LT


def test_validate_rejects_duplicates_and_ascending():
    with pytest.raises(SkewSystemError):
        validate_skew_system(dispin_rules() + dispin_rules()[:1], 3)
    with pytest.raises(SkewSystemError):
        validate_skew_system([Rule((1, 2), NCPoly(2, {(1, 2): 1}))], 2)


def test_leading_term_folding():
    rhs = NCPoly(2, [((1, 2), 1), ((1, 2), Fraction(1, 2)), ((1,), 1)])
    q = validate_skew_system([Rule((2, 1), rhs)], 2)
    assert q.leading_coefficient(2, 1) == Fraction(3, 2)
    cancelled = NCPoly(2, [((1, 2), 1), ((1, 2), -1), ((1,), 1)])
    with pytest.raises(SkewSystemError):
        validate_skew_system([Rule((2, 1), cancelled)], 2)


def test_apply_reduction_examples(dispin):
    rule = dispin.rule(3, 1)
    assert apply_reduction(P("z*x", dispin), rule, (), ()) == P("-x*z + y", dispin)
    f = P("x*y", dispin)
    for r in dispin.rules:
        assert apply_reduction(f, r, (), ()) == f
        assert apply_reduction(f, r, (3,), (1,)) == f
    got = apply_reduction(P("2*x*z*x", dispin), rule, (1,), ())
    assert got == P("-2*x*x*z + 2*x*y", dispin)


def test_red_examples(dispin, woronowicz):
    assert red((3, 1), 1, dispin) == P("-x*z + y", dispin)
    nu = woronowicz.ctx.param("nu")
    expected = P("nu^-6*x*z*y - nu^-6*(1 + nu^2)*x*y", woronowicz)
    assert red((3, 1, 2), nu ** -2, woronowicz) == expected
    # least descent of y*z*x is at z*x, not y*z
    assert red((2, 3, 1), 1, dispin) == P("-y*x*z + y^2", dispin)
    with pytest.raises(PreconditionError):
        red((1, 2), 1, dispin)


def test_stred_examples(dispin, woronowicz):
    nf, _ = stred(P("z*(x*y - x)", dispin), dispin)
    assert nf == P("-x*y*z + 2*x*z + y^2 - y", dispin)
    nf, _ = stred(P("z*(nu^-2*x*y - nu^-1*z)", woronowicz), woronowicz)
    assert nf == P("nu^-2*x*y*z - nu^-1*z^2", woronowicz)
    f = P("x*y*z + 3*y^2 - 1", dispin)
    nf, trace = stred(f, dispin)
    assert nf == f and len(trace) == 0


def test_exhaustive_examples(dispin):
    q = commutative_system(3)
    assert normal_forms_exhaustive(NCPoly.monomial(3, (3, 2, 1)), q) == {NCPoly.monomial(3, (1, 2, 3))}
    _, ex3 = corpus_system("ex3", alpha=2, beta=3)
    forms = sorted(normal_forms_exhaustive(NCPoly.monomial(3, (3, 2, 1)), ex3), key=str)
    assert len(forms) == 2
    diff = forms[0] - forms[1]
    assert diff in (P("y*z + z", ex3), -P("y*z + z", ex3))
    assert len(normal_forms_exhaustive(NCPoly.monomial(3, (3, 2, 1)), dispin)) == 1


def test_top_degree_can_cancel(dispin):
    f = P("y*x - x*y", dispin)
    assert f.is_normal() and f.degree() == 2
    assert stred(f, dispin)[0] == P("-x", dispin)


def test_exhaustive_budget(dispin):
    with pytest.raises(SearchBudgetError):
        normal_forms_exhaustive(NCPoly.monomial(3, (3, 2, 1, 3, 2)), dispin)
    with pytest.raises(SearchBudgetError):
        normal_forms_exhaustive(NCPoly.monomial(3, (3, 3, 2, 1)), dispin, node_cap=3)


def test_standard_iff_irreducible():
    rng = random.Random(7)
    systems = [q for _, _, q in pbw_corpus()] + [random_system(rng, 0.5)[1] for _ in range(5)]
    for q in systems:
        for w in all_words(3, 3):
            m = NCPoly.monomial(3, w, 1, q.ctx)
            assert is_irreducible(m, q) == is_standard(w)
            if not is_standard(w):
                assert red(w, 1, q) != m


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([0.3, 0.7, 0.95]))
def test_stred_properties(seed, zero_prob):
    rng = random.Random(seed)
    _, q = random_system(rng, zero_prob)
    f = random_poly(rng, 3, max_degree=4)
    nf, trace = stred(f, q)
    assert nf.is_standard()
    if f and nf:
        assert word_cmp_deglex(nf.leading()[0], f.leading()[0]) <= 0
    if f.is_normal() and nf:
        # lower-degree terms never change the top degree of a normal input
        top = NCPoly(3, [(w, c) for w, c in f if len(w) == f.degree()])
        if stred(top, q)[0].degree() == f.degree():
            assert nf.degree() == f.degree()
    assert trace.replay(f, q) == nf
    assert f - nf == trace.telescope(q)
    assert stred(f, q) == (nf, trace)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_stred_linear_and_unique_when_pbw(seed):
    rng = random.Random(seed)
    name, p, q = pbw_corpus()[seed % 8]
    f = random_poly(rng, 3, max_degree=3)
    g = random_poly(rng, 3, max_degree=3)
    c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    assert stred(f.scale(c) + g, q)[0] == stred(f, q)[0].scale(c) + stred(g, q)[0]
    assert normal_forms_exhaustive(f, q) == {stred(f, q)[0]}
    assert check_pbw(q).is_pbw, name
