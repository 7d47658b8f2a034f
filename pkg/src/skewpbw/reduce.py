"""Rewriting rules, skew reduction systems and reduction to standard form.

A skew system on ``x1..xn`` has one rule per descending pair ``(j, i)``,
``j > i``::

    x_j x_i  ->  c_ij * x_i x_j + p_ji,      lm(p_ji) < x_i x_j (deglex)

with ``c_ij`` a unit.  :func:`red` rewrites a non-standard monomial at its
first descent, :func:`stred` iterates it on leading terms until the
polynomial is standard, and :func:`normal_forms_exhaustive` is a brute-force
oracle that follows every possible reduction order instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coeff import ParamContext, Scalar, as_scalar, render_scalar, scalar_is_unit
from .errors import ContextError, PreconditionError, SearchBudgetError, SkewSystemError
from .freealg import NCPoly, Word, deglex_key, first_descent, is_standard, render_word

# Set by the test suite: every stred call replays its own trace.
VERIFY_TRACES = False

DEFAULT_MAX_DEGREE = 4
DEFAULT_NODE_CAP = 1_000_000


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: NCPoly

    def __post_init__(self):
        if not self.lhs:
            raise SkewSystemError("a rule needs a non-empty left-hand word")

    @property
    def pair(self) -> tuple[int, int]:
        return self.lhs[0], self.lhs[1]


@dataclass(frozen=True)
class SkewSystem:
    """Validated skew reduction system; build it with :func:`validate_skew_system`."""

    n: int
    ctx: ParamContext | None
    rules: tuple[Rule, ...]
    _by_pair: dict = field(default=None, compare=False, hash=False, repr=False)

    def rule(self, j: int, i: int) -> Rule:
        return self._by_pair[(j, i)]

    def leading_coefficient(self, j: int, i: int) -> Scalar:
        return self.rule(j, i).rhs[(i, j)]

    def tail(self, j: int, i: int) -> NCPoly:
        """``p_ji``: the rule's right-hand side without its ``x_i x_j`` term."""
        rhs = self.rule(j, i).rhs
        return NCPoly(self.n, [(w, c) for w, c in rhs if w != (i, j)], self.ctx)

    def poly(self, terms) -> NCPoly:
        return NCPoly(self.n, terms, self.ctx)


def descending_pairs(n: int) -> list[tuple[int, int]]:
    return [(j, i) for j in range(n, 0, -1) for i in range(j - 1, 0, -1)]


def validate_skew_system(rules: Iterable[Rule], n: int, ctx: ParamContext | None = None) -> SkewSystem:
    """Check the skew shape and return a :class:`SkewSystem`.

    A tail term on ``x_i x_j`` itself is folded into the leading coefficient
    before the unit check.
    """
    by_pair: dict = {}
    for rule in rules:
        if rule.rhs.n != n or rule.rhs.ctx != ctx:
            raise ContextError(f"rule {rule.lhs} is not over the system's generators/parameters")
        if len(rule.lhs) != 2 or not rule.lhs[0] > rule.lhs[1]:
            raise SkewSystemError(f"left-hand word {rule.lhs} is not x_j x_i with j > i", rule.lhs)
        if not all(1 <= g <= n for g in rule.lhs):
            raise SkewSystemError(f"left-hand word {rule.lhs} uses a generator outside 1..{n}", rule.lhs)
        if rule.pair in by_pair:
            raise SkewSystemError(f"duplicate rule for pair {rule.pair}", rule.pair)
        by_pair[rule.pair] = rule
    for pair in descending_pairs(n):
        if pair not in by_pair:
            raise SkewSystemError(f"missing rule for pair {pair}", pair)

    canonical = []
    for j, i in sorted(by_pair, reverse=True):
        rhs = by_pair[(j, i)].rhs
        bound = deglex_key((i, j))
        c = rhs[(i, j)]
        if c == 0 or not scalar_is_unit(c):
            raise SkewSystemError(
                f"coefficient {render_scalar(c)} of x{i}x{j} in the rule for x{j}x{i} is not a unit", (j, i)
            )
        for w, _ in rhs:
            if w != (i, j) and deglex_key(w) > bound:
                raise SkewSystemError(
                    f"tail word {render_word(w)} of the rule for x{j}x{i} exceeds x{i}x{j} in deglex", (j, i)
                )
        canonical.append(Rule((j, i), rhs))
    system = SkewSystem(n, ctx, tuple(canonical))
    object.__setattr__(system, "_by_pair", {r.pair: r for r in canonical})
    return system


# -- single reductions ------------------------------------------------------


def apply_reduction(f: NCPoly, rule: Rule, A: Word, B: Word) -> NCPoly:
    """The reduction ``r_{A rule B}``: move the coefficient of ``A W B`` onto ``A f B``."""
    target = tuple(A) + rule.lhs + tuple(B)
    if target not in f:
        return f
    c = f[target]
    terms = [(w, d) for w, d in f if w != target]
    terms.extend((tuple(A) + w + tuple(B), c * d) for w, d in rule.rhs)
    return NCPoly(f.n, terms, f.ctx)


@dataclass(frozen=True)
class TraceStep:
    pair: tuple[int, int]
    left: Word
    right: Word
    coeff: Scalar

    def render(self, names: Sequence[str] | None = None) -> str:
        j, i = self.pair
        return f"σ=({j},{i}) A={render_word(self.left, names)} B={render_word(self.right, names)} c={render_scalar(self.coeff)}"


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[TraceStep, ...] = ()

    def __len__(self):
        return len(self.steps)

    def replay(self, f: NCPoly, system: SkewSystem) -> NCPoly:
        """Re-apply the recorded reductions to ``f``; each must move exactly its coefficient."""
        for step in self.steps:
            rule = system.rule(*step.pair)
            word = step.left + rule.lhs + step.right
            if f[word] != step.coeff:
                raise AssertionError(f"trace step {step.render()} does not match the polynomial")
            f = apply_reduction(f, rule, step.left, step.right)
        return f

    def telescope(self, system: SkewSystem) -> NCPoly:
        """Sum of ``c * A (W - f) B`` over the steps; equals original minus final."""
        acc = []
        for step in self.steps:
            rule = system.rule(*step.pair)
            acc.append((step.left + rule.lhs + step.right, step.coeff))
            acc.extend((step.left + w + step.right, -step.coeff * d) for w, d in rule.rhs)
        return NCPoly(system.n, acc, system.ctx)

    def render(self, names: Sequence[str] | None = None) -> str:
        return "\n".join(step.render(names) for step in self.steps)


def _split(word: Word, system: SkewSystem):
    k = first_descent(word)
    if k is None:
        raise PreconditionError(f"{render_word(word)} is standard; red needs a non-standard monomial")
    return word[:k], system.rule(word[k], word[k + 1]), word[k + 2 :]


def red(word: Word, coeff, system: SkewSystem) -> NCPoly:
    """Reduce the monomial ``coeff * word`` at its first descent.

    Writing ``word = C x_j x_i B`` with the descent as far left as possible,
    the result is ``coeff * C f_ji B``.
    """
    C, rule, B = _split(tuple(word), system)
    coeff = as_scalar(coeff, system.ctx)
    return NCPoly(system.n, [(C + w + B, coeff * d) for w, d in rule.rhs], system.ctx)


def stred(f: NCPoly, system: SkewSystem) -> tuple[NCPoly, ReductionTrace]:
    """Reduce ``f`` to standard form, returning the result and its trace.

    While ``f`` is nonzero its leading term is either moved to the output
    (standard word) or replaced by ``red`` of itself.  Termination follows
    from compatibility of the rules with deglex.
    """
    if f.n != system.n or f.ctx != system.ctx:
        raise ContextError("polynomial and system do not share generators/parameters")
    work = dict(f.items())
    out = []
    steps = []
    zero = as_scalar(0, system.ctx)
    while work:
        w = max(work, key=deglex_key)
        c = work.pop(w)
        if is_standard(w):
            out.append((w, c))
            continue
        C, rule, B = _split(w, system)
        steps.append(TraceStep(rule.pair, C, B, c))
        for u, d in rule.rhs:
            key = C + u + B
            v = work.get(key, zero) + c * d
            if v == 0:
                work.pop(key, None)
            else:
                work[key] = v
    result = NCPoly(system.n, out, system.ctx)
    trace = ReductionTrace(tuple(steps))
    if VERIFY_TRACES:
        if trace.replay(f, system) != result:
            raise AssertionError("stred trace replay disagrees with its result")
        if f - result != trace.telescope(system):
            raise AssertionError("stred trace does not telescope to original - final")
    return result, trace


def is_irreducible(f: NCPoly, system: SkewSystem) -> bool:
    """True iff every reduction acts trivially on ``f``.

    Tries each rule at each position of each support word, independently of
    the standard-word shortcut.
    """
    for w, _ in f:
        for k in range(len(w) - 1):
            pair = (w[k], w[k + 1])
            if pair in system._by_pair:
                rule = system._by_pair[pair]
                if apply_reduction(f, rule, w[:k], w[k + 2 :]) != f:
                    return False
    return True


def normal_forms_exhaustive(
    f: NCPoly,
    system: SkewSystem,
    max_degree: int = DEFAULT_MAX_DEGREE,
    node_cap: int = DEFAULT_NODE_CAP,
    stop_after: int | None = None,
) -> frozenset[NCPoly]:
    """All irreducible results of all maximal reduction sequences from ``f``.

    Every applicable reduction is branched on at every step; polynomials
    already explored are skipped.  The answer has one element exactly when
    ``f`` is reduction-unique.  With ``stop_after`` the search ends as soon
    as that many distinct results are known (enough to refute uniqueness).
    """
    if f.n != system.n or f.ctx != system.ctx:
        raise ContextError("polynomial and system do not share generators/parameters")
    if f.degree() > max_degree:
        raise SearchBudgetError(f"{f} has degree {f.degree()} above the cap {max_degree}")
    rules = system._by_pair
    zero = as_scalar(0, system.ctx)
    start = frozenset(f.items())
    seen = {start}
    stack = [start]
    results = set()
    while stack:
        state = stack.pop()
        irreducible = True
        for w, c in state:
            for k in range(len(w) - 1):
                rule = rules.get((w[k], w[k + 1]))
                if rule is None:
                    continue
                irreducible = False
                # the reduction r_{A rule B} with A = w[:k], B = w[k+2:]
                A, B = w[:k], w[k + 2 :]
                nxt = dict(state)
                del nxt[w]
                for u, d in rule.rhs:
                    key = A + u + B
                    v = nxt.get(key, zero) + c * d
                    if v == 0:
                        nxt.pop(key, None)
                    else:
                        nxt[key] = v
                h = frozenset(nxt.items())
                if h not in seen:
                    seen.add(h)
                    if len(seen) > node_cap:
                        raise SearchBudgetError(f"exhaustive search from {f} exceeded {node_cap} nodes")
                    stack.append(h)
        if irreducible:
            results.add(state)
            if stop_after is not None and len(results) >= stop_after:
                break
    return frozenset(NCPoly(system.n, r, system.ctx) for r in results)


def is_reduction_unique(f: NCPoly, system: SkewSystem, **caps) -> bool:
    """Brute-force check that every reduction order of ``f`` ends in the same place."""
    return len(normal_forms_exhaustive(f, system, stop_after=2, **caps)) == 1


def commutative_system(n: int) -> SkewSystem:
    """``x_j x_i -> x_i x_j`` for every pair: the polynomial ring."""
    rules = [Rule((j, i), NCPoly.monomial(n, (i, j))) for j, i in descending_pairs(n)]
    return validate_skew_system(rules, n)
