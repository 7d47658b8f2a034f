"""Three-generator skew polynomial algebras.

With ``x1 = x, x2 = y, x3 = z`` such an algebra has rules::

    x3 x2 -> alpha^-1 x2 x3 + r0_23 + r1_23 x1 + r2_23 x2 + r3_23 x3
    x3 x1 -> beta     x1 x3 + r0_13 + r1_13 x1 + r2_13 x2 + r3_13 x3
    x2 x1 -> gamma^-1 x1 x2 + r0_12 + r1_12 x1 + r2_12 x2 + r3_12 x3

and it has a PBW basis exactly when the ten coefficient identities in
:data:`CONDITIONS` hold.  The identities are the coefficients of the two
standard reductions of the single overlap ``x3 x2 x1``; :func:`derive_conditions`
recomputes them from scratch so the table can be checked against the engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional

from .coeff import ParamContext, Scalar, as_scalar, evaluate, render_scalar, scalar_invert
from .diamond import check_pbw
from .errors import ClassificationError, ShapeError, VerdictRequiredError
from .freealg import NCPoly, Word, render_word
from .presentio import parse_scalar
from .reduce import Rule, SkewSystem, validate_skew_system

PAIRS = ((2, 3), (1, 3), (1, 2))
# descending rule (j, i) that owns each ascending pair
_RULE_OF = {(2, 3): (3, 2), (1, 3): (3, 1), (1, 2): (2, 1)}


def r_name(t: int, pair: tuple[int, int]) -> str:
    return f"r{t}_{pair[0]}{pair[1]}"


R_NAMES = tuple(r_name(t, pair) for pair in PAIRS for t in range(4))
SYMBOLIC_CONTEXT = ParamContext.build(units=("alpha", "beta", "gamma"), params=R_NAMES)


@dataclass(frozen=True)
class SkewCoefficients:
    """Leading units and the twelve linear-tail coefficients of a 3-generator system."""

    ctx: Optional[ParamContext]
    alpha_inv: Scalar
    beta: Scalar
    gamma_inv: Scalar
    r: Mapping[tuple[int, tuple[int, int]], Scalar] = field(default_factory=dict)

    def bindings(self) -> dict[str, Scalar]:
        """Values for every name used in :data:`CONDITIONS`."""
        values = {
            "alpha": scalar_invert(self.alpha_inv),
            "beta": self.beta,
            "gamma": scalar_invert(self.gamma_inv),
        }
        for pair in PAIRS:
            for t in range(4):
                values[r_name(t, pair)] = self.r[(t, pair)]
        return values

    def unit(self, pair) -> Scalar:
        return {(2, 3): self.alpha_inv, (1, 3): self.beta, (1, 2): self.gamma_inv}[pair]


def extract_coefficients(system: SkewSystem) -> SkewCoefficients:
    if system.n != 3:
        raise ShapeError(f"coefficient extraction needs 3 generators, got {system.n}")
    units = {}
    r = {}
    for pair in PAIRS:
        j, i = _RULE_OF[pair]
        units[pair] = system.leading_coefficient(j, i)
        tail = system.tail(j, i)
        for w, _ in tail:
            if len(w) > 1:
                raise ShapeError(
                    f"rule for x{j}x{i} has the quadratic tail term {render_word(w)}; "
                    "only constants and single generators are allowed"
                )
        r[(0, pair)] = tail[()]
        for t in (1, 2, 3):
            r[(t, pair)] = tail[(t,)]
    return SkewCoefficients(system.ctx, units[(2, 3)], units[(1, 3)], units[(1, 2)], r)


def rules_from_coefficients(c: SkewCoefficients) -> SkewSystem:
    rules = []
    for pair in PAIRS:
        j, i = _RULE_OF[pair]
        terms = [(pair, c.unit(pair)), ((), c.r[(0, pair)])]
        terms += [((t,), c.r[(t, pair)]) for t in (1, 2, 3)]
        rules.append(Rule((j, i), NCPoly(3, terms, c.ctx)))
    return validate_skew_system(rules, 3, c.ctx)


# -- the ten identities -------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    """One coefficient identity, keyed by the standard monomial it comes from.

    ``misprint_lhs`` / ``misprint_rhs`` record a widely copied form of the
    identity with wrong tail indices.  They are kept only so reports can
    show where that form disagrees with the recomputed one.
    """

    label: str
    monomial: Word
    lhs: str
    rhs: str
    misprint_lhs: Optional[str] = None
    misprint_rhs: Optional[str] = None

    @property
    def lhs_value(self):
        return _symbolic(self.lhs)

    @property
    def rhs_value(self):
        return _symbolic(self.rhs)

    @property
    def misprint_values(self):
        """``(lhs, rhs)`` of the misprinted form, or ``None``."""
        if not (self.misprint_lhs or self.misprint_rhs):
            return None
        return _symbolic(self.misprint_lhs or self.lhs), _symbolic(self.misprint_rhs or self.rhs)


@lru_cache(maxsize=None)
def _symbolic(text: str):
    return as_scalar(parse_scalar(text, SYMBOLIC_CONTEXT), SYMBOLIC_CONTEXT)


CONDITIONS: tuple[Condition, ...] = (
    Condition(
        "gordito",
        (1,),
        "gamma^-1*beta*r0_23 + gamma^-1*r3_13*r1_23 + r1_12*r1_13 + r2_12*r1_23",
        "alpha^-1*r1_12*r1_13 + r0_23 + r1_12*r2_23 + r1_13*r3_23",
        misprint_rhs="alpha^-1*r1_12*r1_13 + r0_23 + r1_12*r2_23 + r1_13*r2_23",
    ),
    Condition(
        "flaquito",
        (2,),
        "gamma^-1*r0_13 + gamma^-1*r3_13*r2_23 + r1_12*r2_13 + r2_12*r2_23",
        "alpha^-1*r0_13 + alpha^-1*r1_13*r2_12 + r2_12*r2_23 + r2_13*r3_23",
    ),
    Condition(
        "moder",
        (3,),
        "gamma^-1*r3_13*r3_23 + r0_12 + r1_12*r3_13 + r2_12*r3_23",
        "beta*alpha^-1*r0_12 + alpha^-1*r1_13*r3_12 + r2_23*r3_12 + r3_13*r3_23",
        misprint_lhs="gamma^-1*r3_13*r3_23 + r0_12 + r1_12*r3_13 + r2_12*r3_13",
        misprint_rhs="beta*alpha^-1*r0_12 + alpha^-1*r1_13*r3_12 + r2_23*r3_12 + r2_13*r3_23",
    ),
    Condition(
        "pss1",
        (1, 2),
        "gamma^-1*r1_13 + gamma^-1*beta*r2_23",
        "gamma^-1*alpha^-1*r1_13 + gamma^-1*r2_23",
    ),
    Condition(
        "pss2",
        (1, 3),
        "gamma^-1*beta*r3_23 + beta*r1_12",
        "beta*alpha^-1*r1_12 + beta*r3_23",
    ),
    Condition(
        "pss3",
        (2, 3),
        "gamma^-1*alpha^-1*r3_13 + alpha^-1*r2_12",
        "beta*alpha^-1*r2_12 + alpha^-1*r3_13",
    ),
    Condition("cattt", (1, 1), "gamma^-1*beta*r1_23", "r1_23"),
    Condition("doggg", (2, 2), "gamma^-1*r2_13", "alpha^-1*r2_13"),
    Condition("delfi", (3, 3), "r3_12", "beta*alpha^-1*r3_12", misprint_lhs="r3_13"),
    Condition(
        "pss6",
        (),
        "gamma^-1*r3_13*r0_23 + r1_12*r0_13 + r2_12*r0_23",
        "alpha^-1*r0_12*r1_13 + r0_12*r2_23 + r0_13*r3_23",
    ),
)

LABELS = tuple(c.label for c in CONDITIONS)
_BY_MONOMIAL = {c.monomial: c for c in CONDITIONS}
_BY_LABEL = {c.label: c for c in CONDITIONS}


@dataclass(frozen=True)
class ConditionRecord:
    label: str
    monomial: Word
    lhs: Scalar
    rhs: Scalar

    @property
    def satisfied(self) -> bool:
        return self.lhs - self.rhs == 0


@dataclass(frozen=True)
class ConditionReport:
    records: tuple[ConditionRecord, ...]

    @property
    def ok(self) -> bool:
        return all(r.satisfied for r in self.records)

    def __getitem__(self, label: str) -> ConditionRecord:
        return next(r for r in self.records if r.label == label)

    def violated(self) -> list[str]:
        return [r.label for r in self.records if not r.satisfied]


def check_conditions(c: SkewCoefficients) -> ConditionReport:
    values = c.bindings()
    one = as_scalar(1, c.ctx)
    records = []
    for cond in CONDITIONS:
        lhs = evaluate(cond.lhs_value, values, one)
        rhs = evaluate(cond.rhs_value, values, one)
        records.append(ConditionRecord(cond.label, cond.monomial, lhs, rhs))
    return ConditionReport(tuple(records))


def symbolic_system() -> SkewSystem:
    """The fully generic 3-generator system over :data:`SYMBOLIC_CONTEXT`."""
    ctx = SYMBOLIC_CONTEXT
    r = {(t, pair): ctx.param(r_name(t, pair)) for pair in PAIRS for t in range(4)}
    inv = ctx.param("alpha").inverse(), ctx.param("beta"), ctx.param("gamma").inverse()
    return rules_from_coefficients(SkewCoefficients(ctx, *inv, r))


@dataclass(frozen=True)
class DerivedIdentity:
    label: str
    monomial: Word
    lhs: Scalar
    rhs: Scalar

    def render(self, mul: str = " * ") -> str:
        return f"{render_scalar(self.lhs, mul)} = {render_scalar(self.rhs, mul)}"


def derive_conditions() -> list[DerivedIdentity]:
    """Recompute the identities from the overlap ``x3 x2 x1`` of the generic system.

    Each standard monomial in the support of ``g - h`` gives one identity
    ``coeff_g = coeff_h``.  The result is ordered like :data:`CONDITIONS`.
    """
    witness = check_pbw(symbolic_system()).witnesses[0]
    g, h = witness.g, witness.h
    found = {}
    for w, _ in witness.difference:
        if w not in _BY_MONOMIAL:
            raise AssertionError(f"unexpected monomial {render_word(w)} in the overlap difference")
        found[w] = DerivedIdentity(_BY_MONOMIAL[w].label, w, g[w], h[w])
    return [found[c.monomial] for c in CONDITIONS if c.monomial in found]


@dataclass(frozen=True)
class VerifyRow:
    label: str
    matches: bool
    exact: bool
    misprint_matches: Optional[bool]


def _same_identity(lhs, rhs, lhs2, rhs2) -> bool:
    d1, d2 = lhs - rhs, lhs2 - rhs2
    return d1 == d2 or d1 == -d2


def verify_conditions(derived: list[DerivedIdentity]) -> list[VerifyRow]:
    """Compare derived identities with the stored table, label by label.

    ``matches`` is ring equality of ``lhs - rhs`` up to sign, ``exact`` is
    equality of both sides separately.  ``misprint_matches`` is reported
    only for labels that carry a misprinted form.
    """
    rows = []
    by_label = {d.label: d for d in derived}
    for cond in CONDITIONS:
        d = by_label.get(cond.label)
        if d is None:
            rows.append(VerifyRow(cond.label, False, False, None))
            continue
        matches = _same_identity(d.lhs, d.rhs, cond.lhs_value, cond.rhs_value)
        exact = d.lhs == cond.lhs_value and d.rhs == cond.rhs_value
        misprint = None
        if cond.misprint_values:
            misprint = _same_identity(d.lhs, d.rhs, *cond.misprint_values)
        rows.append(VerifyRow(cond.label, matches, exact, misprint))
    return rows


def condition(label: str) -> Condition:
    return _BY_LABEL[label]


# -- classification -----------------------------------------------------------

A, B = "a", "b"
_ZERO = (0, 0, 0, 0)

# (lambda, mu, nu) for yz - alpha zy = lambda, zx - beta xz = mu, xy - gamma yx = nu,
# each as coefficients of (1, x, y, z); strings are free scalar pattern variables.
SUBCASES: dict[str, list[tuple[str, tuple]]] = {
    "a": [],
    "b": [
        ("b.i", ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0))),
        ("b.ii", ((0, 0, 0, 1), (B, 0, 0, 0), (0, 1, 0, 0))),
        ("b.iii", (_ZERO, (0, 0, 1, 0), _ZERO)),
        ("b.iv", (_ZERO, (B, 0, 0, 0), _ZERO)),
        ("b.v", ((0, 0, 0, A), _ZERO, (0, 1, 0, 0))),
        ("b.vi", ((0, 0, 0, 1), _ZERO, _ZERO)),
    ],
    "c": [
        ("c.i", (_ZERO, (B, 0, 1, 0), _ZERO)),
        ("c.ii", (_ZERO, (B, 0, 0, 0), _ZERO)),
    ],
    "d": [],
    "e": [
        ("e.i", ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))),
        ("e.ii", (_ZERO, _ZERO, (0, 0, 0, 1))),
        ("e.iii", (_ZERO, _ZERO, (B, 0, 0, 0))),
        ("e.iv", ((0, 0, -1, 0), (0, 1, 1, 0), _ZERO)),
        ("e.v", ((0, 0, 0, A), (0, 0, 0, 1), _ZERO)),
    ],
}

# single-pattern families: the relations expected for the whole case
FAMILY_PATTERNS = {
    "a": (_ZERO, _ZERO, _ZERO),
    "d": (("b1", "a1", 0, 0), ("b2", 0, "a2", 0), ("b3", 0, 0, "a3")),
}


@dataclass(frozen=True)
class Classification:
    case: str
    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    subcase: Optional[str] = None
    notes: tuple[str, ...] = ()


def _decide_equal(a: Scalar, b: Scalar) -> Optional[bool]:
    d = a - b
    if d == 0:
        return True
    if getattr(d, "is_constant", lambda: True)():
        return False
    return None


def case_letter(alpha: Scalar, beta: Scalar, gamma: Scalar) -> str:
    """Case of the classification from the unit parameters alone.

    Raises :class:`ClassificationError` when a needed equality between
    symbolic parameters cannot be decided, or when no case guard applies.
    """
    names = {"alpha": alpha, "beta": beta, "gamma": gamma, "1": Fraction(1)}
    checks = [("alpha", "beta"), ("beta", "gamma"), ("alpha", "gamma"), ("alpha", "1"), ("beta", "1"), ("gamma", "1")]
    eq = {}
    undecided = []
    for u, v in checks:
        eq[(u, v)] = _decide_equal(names[u], names[v])
        if eq[(u, v)] is None:
            undecided.append(f"{u} = {v}  ({render_scalar(names[u])} vs {render_scalar(names[v])})")
    if undecided:
        raise ClassificationError("cannot decide the case guards for symbolic parameters", undecided)

    ab, bg, ag = eq[("alpha", "beta")], eq[("beta", "gamma")], eq[("alpha", "gamma")]
    a1, b1, g1 = eq[("alpha", "1")], eq[("beta", "1")], eq[("gamma", "1")]
    size = 1 if (ab and bg) else 3 if not (ab or bg or ag) else 2
    if size == 3:
        return "a"
    if size == 2 and a1 and g1 and not b1:
        return "b"
    if size == 2 and ag and not a1 and not ab:
        return "c"
    if size == 1:
        return "e" if a1 else "d"
    shown = ", ".join(f"{k} = {render_scalar(v)}" for k, v in list(names.items())[:3])
    raise ClassificationError(f"no case guard applies to {shown}")


def bracket_tails(c: SkewCoefficients) -> tuple[tuple[Scalar, ...], ...]:
    """Right-hand sides (lambda, mu, nu) of the bracket relations as (1, x, y, z) coefficients."""
    alpha = scalar_invert(c.alpha_inv)
    gamma = scalar_invert(c.gamma_inv)
    lam = tuple(-alpha * c.r[(t, (2, 3))] for t in range(4))
    mu = tuple(c.r[(t, (1, 3))] for t in range(4))
    nu = tuple(-gamma * c.r[(t, (1, 2))] for t in range(4))
    return lam, mu, nu


def _match(pattern, values) -> bool:
    bound: dict = {}
    for pat_rel, rel in zip(pattern, values):
        for p, v in zip(pat_rel, rel):
            if isinstance(p, str):
                if p in bound and bound[p] != v:
                    return False
                bound[p] = v
            elif v != p:
                return False
    return True


def classify(c: SkewCoefficients, system: SkewSystem) -> Classification:
    if not check_pbw(system).is_pbw:
        raise VerdictRequiredError("classification needs a system whose standard monomials form a basis")
    alpha = scalar_invert(c.alpha_inv)
    gamma = scalar_invert(c.gamma_inv)
    letter = case_letter(alpha, c.beta, gamma)
    tails = bracket_tails(c)
    notes = []
    subcase = None
    for label, pattern in SUBCASES[letter]:
        if _match(pattern, tails):
            subcase = label
            break
    if letter in FAMILY_PATTERNS:
        if _match(FAMILY_PATTERNS[letter], tails):
            notes.append(f"relations have the case ({letter}) form")
        else:
            notes.append(f"relations are not literally in the case ({letter}) form")
    elif subcase is None:
        notes.append("relations match none of the listed subcases literally")
    return Classification(letter, alpha, c.beta, gamma, subcase, tuple(notes))
