"""Overlap resolution for skew systems and the PBW decision.

In a skew system the only ambiguities are the overlaps on ``x_k x_j x_i``
with ``k > j > i``.  The system is PBW (standard monomials form a basis of
the quotient) exactly when both ways of starting the reduction of each such
word, ``x_k f_ji`` and ``f_kj x_i``, reach the same standard polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .errors import PreconditionError, VerdictRequiredError
from .freealg import NCPoly, Word
from .reduce import SkewSystem, stred


@dataclass(frozen=True)
class Overlap:
    k: int
    j: int
    i: int

    @property
    def word(self) -> Word:
        return (self.k, self.j, self.i)

    def left_target(self, system: SkewSystem) -> NCPoly:
        """``x_k * f_ji``."""
        return system.rule(self.j, self.i).rhs.lmul((self.k,))

    def right_target(self, system: SkewSystem) -> NCPoly:
        """``f_kj * x_i``."""
        return system.rule(self.k, self.j).rhs.rmul((self.i,))


@dataclass(frozen=True)
class OverlapWitness:
    overlap: Overlap
    g: NCPoly
    h: NCPoly

    @property
    def difference(self) -> NCPoly:
        return self.g - self.h

    @property
    def resolved(self) -> bool:
        return self.g == self.h


@dataclass(frozen=True)
class PBWVerdict:
    is_pbw: bool
    witnesses: tuple[OverlapWitness, ...]
    first_failure: Optional[Overlap]


def enumerate_overlaps(system: SkewSystem) -> list[Overlap]:
    """Every triple ``i < j < k``, in lexicographic ``(i, j, k)`` order."""
    return [Overlap(k, j, i) for i, j, k in combinations(range(1, system.n + 1), 3)]


def resolve_overlap(overlap: Overlap, system: SkewSystem) -> OverlapWitness:
    g, _ = stred(overlap.left_target(system), system)
    h, _ = stred(overlap.right_target(system), system)
    return OverlapWitness(overlap, g, h)


@lru_cache(maxsize=256)
def check_pbw(system: SkewSystem) -> PBWVerdict:
    witnesses = tuple(resolve_overlap(o, system) for o in enumerate_overlaps(system))
    failure = next((w.overlap for w in witnesses if not w.resolved), None)
    return PBWVerdict(failure is None, witnesses, failure)


def quotient_multiply(f: NCPoly, g: NCPoly, system: SkewSystem) -> NCPoly:
    """Product of two standard polynomials in the quotient algebra."""
    if not check_pbw(system).is_pbw:
        raise VerdictRequiredError("quotient multiplication needs a PBW system")
    if not (f.is_standard() and g.is_standard()):
        raise PreconditionError("quotient_multiply expects standard polynomials")
    return stred(f * g, system)[0]
