"""Exact coefficient arithmetic.

Two kinds of scalar are in use:

* ``fractions.Fraction`` for purely numeric presentations, and
* :class:`ParamScalar`, a Laurent polynomial with rational coefficients in a
  fixed list of named parameters.  Parameters declared as *units* may carry
  negative exponents; ordinary parameters may not.

Every :class:`ParamScalar` carries its :class:`ParamContext`.  Rational
constants coerce into any context; two different contexts never mix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Union

from .errors import ContextError, DivisionByZeroError, NotAUnitError

__all__ = [
    "ParamContext",
    "ParamScalar",
    "Scalar",
    "as_scalar",
    "scalar_add",
    "scalar_mul",
    "scalar_invert",
    "scalar_is_constant",
    "scalar_is_unit",
    "evaluate",
    "render_scalar",
    "render_coefficient",
]


@dataclass(frozen=True)
class ParamContext:
    """Ordered parameter names with a unit flag for each."""

    names: tuple[str, ...]
    units: tuple[bool, ...]

    def __post_init__(self):
        if len(self.names) != len(self.units):
            raise ValueError("names and units must have the same length")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate parameter name in {self.names}")
        if not self.names:
            raise ValueError("a parameter context needs at least one parameter")

    @classmethod
    def build(cls, units=(), params=()) -> "ParamContext":
        """Context with the unit parameters first, then the ordinary ones."""
        units, params = tuple(units), tuple(params)
        return cls(units + params, (True,) * len(units) + (False,) * len(params))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def is_unit(self, name: str) -> bool:
        return self.units[self.index(name)]

    def zero_exponents(self) -> tuple[int, ...]:
        return (0,) * len(self.names)

    def constant(self, value) -> "ParamScalar":
        return ParamScalar(self, {self.zero_exponents(): Fraction(value)})

    def param(self, name: str) -> "ParamScalar":
        exps = [0] * len(self.names)
        exps[self.index(name)] = 1
        return ParamScalar(self, {tuple(exps): Fraction(1)})

    def coerce(self, value) -> "ParamScalar":
        if isinstance(value, ParamScalar):
            if value.ctx != self:
                raise ContextError(f"scalar over {value.ctx.names} used in context {self.names}")
            return value
        if isinstance(value, Rational):
            return self.constant(value)
        raise TypeError(f"cannot coerce {value!r} into a parameter context")


class ParamScalar:
    """Laurent polynomial over the rationals in the parameters of ``ctx``.

    Terms are stored as a tuple of ``(exponents, coefficient)`` pairs sorted
    by descending exponent tuple, with no zero coefficients, so structural
    equality is ring equality.
    """

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: ParamContext, terms: Mapping[tuple[int, ...], Rational]):
        units = ctx.units
        clean = {}
        for exps, c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            if len(exps) != len(units):
                raise ContextError(f"exponent vector {exps} does not fit context {ctx.names}")
            for e, unit, name in zip(exps, units, ctx.names):
                if e < 0 and not unit:
                    raise NotAUnitError(f"negative power of non-unit parameter {name!r}")
            clean[tuple(exps)] = c
        self.ctx = ctx
        self.terms = tuple(sorted(clean.items(), reverse=True))
        self._hash = None

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def constant_value(self) -> Fraction:
        """Rational value of a constant scalar (raises if it is not constant)."""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms[0][1]

    def is_unit(self) -> bool:
        if len(self.terms) != 1:
            return False
        exps, _ = self.terms[0]
        return all(e == 0 or unit for e, unit in zip(exps, self.ctx.units))

    # -- arithmetic -----------------------------------------------------
    def _other(self, other):
        if isinstance(other, ParamScalar):
            if other.ctx != self.ctx:
                raise ContextError(f"parameter contexts differ: {self.ctx.names} vs {other.ctx.names}")
            return other
        if isinstance(other, Rational):
            return self.ctx.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for exps, c in other.terms:
            acc[exps] = acc.get(exps, 0) + c
        return ParamScalar(self.ctx, acc)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar(self.ctx, {e: -c for e, c in self.terms})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return ParamScalar(self.ctx, acc)

    __rmul__ = __mul__

    def inverse(self) -> "ParamScalar":
        if not self.terms:
            raise DivisionByZeroError("division by zero")
        if not self.is_unit():
            raise NotAUnitError(f"{self} is not a unit")
        exps, c = self.terms[0]
        return ParamScalar(self.ctx, {tuple(-e for e in exps): 1 / c})

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = self.ctx.constant(1)
        for _ in range(abs(k)):
            result = result * base
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ParamScalar):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, Rational):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            # constants hash like the rational they equal
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.ctx, self.terms))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"ParamScalar({render_scalar(self)!r})"

    def __str__(self):
        return render_scalar(self)

    def substitute(self, values: Mapping[str, Rational], ctx: "ParamContext | None"):
        """Replace some parameters by rationals, landing in ``ctx``.

        ``ctx`` must list exactly the parameters that are not substituted, in
        their original order (``None`` when every parameter is substituted).
        """
        keep = [i for i, n in enumerate(self.ctx.names) if n not in values]
        kept_names = tuple(self.ctx.names[i] for i in keep)
        if (ctx.names if ctx is not None else ()) != kept_names:
            raise ContextError(f"target context {ctx} does not match remaining parameters {kept_names}")
        acc: dict = {}
        for exps, c in self.terms:
            for i, e in enumerate(exps):
                name = self.ctx.names[i]
                if name in values and e:
                    v = Fraction(values[name])
                    if v == 0 and e < 0:
                        raise DivisionByZeroError(f"unit parameter {name} set to 0")
                    c = c * v**e
            key = tuple(exps[i] for i in keep)
            acc[key] = acc.get(key, 0) + c
        if ctx is None:
            return sum(acc.values(), Fraction(0))
        return ParamScalar(ctx, acc)


Scalar = Union[Fraction, ParamScalar]


def as_scalar(value, ctx: ParamContext | None) -> Scalar:
    """Canonical scalar for ``value`` in ``ctx`` (``None`` means rationals)."""
    if ctx is None:
        if isinstance(value, ParamScalar):
            raise ContextError("parametric scalar used in a rational context")
        return Fraction(value)
    return ctx.coerce(value)


def _check_pair(a, b):
    if isinstance(a, ParamScalar) and isinstance(b, ParamScalar) and a.ctx != b.ctx:
        raise ContextError(f"parameter contexts differ: {a.ctx.names} vs {b.ctx.names}")


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    _check_pair(a, b)
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    _check_pair(a, b)
    return a * b


def scalar_invert(a: Scalar) -> Scalar:
    if isinstance(a, ParamScalar):
        return a.inverse()
    if a == 0:
        raise DivisionByZeroError("division by zero")
    return 1 / Fraction(a)


def scalar_is_constant(a: Scalar) -> bool:
    return not isinstance(a, ParamScalar) or a.is_constant()


def scalar_is_unit(a: Scalar) -> bool:
    if isinstance(a, ParamScalar):
        return a.is_unit()
    return a != 0


def evaluate(s: ParamScalar, bindings: Mapping[str, Scalar], one: Scalar = Fraction(1)) -> Scalar:
    """Evaluate ``s`` with every parameter bound to a scalar of another ring.

    Negative exponents invert the bound value, so unit parameters must be
    bound to units.  ``one`` fixes the target ring when ``s`` is constant.
    """
    total = one * 0
    for exps, c in s.terms:
        term = one * c
        for name, e in zip(s.ctx.names, exps):
            if e > 0:
                for _ in range(e):
                    term = term * bindings[name]
            elif e < 0:
                inv = scalar_invert(bindings[name])
                for _ in range(-e):
                    term = term * inv
        total = total + term
    return total


# -- rendering ----------------------------------------------------------


def _rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _monomial(ctx: ParamContext, exps, mul: str) -> str:
    parts = []
    for name, e in zip(ctx.names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return mul.join(parts)


def _term(ctx: ParamContext, exps, c: Fraction, mul: str) -> str:
    mono = _monomial(ctx, exps, mul)
    if not mono:
        return _rational(c)
    sign = "-" if c < 0 else ""
    c = abs(c)
    if c == 1:
        return sign + mono
    num = _rational(c) if c.denominator == 1 else f"({_rational(c)})"
    return f"{sign}{num}{mul}{mono}"


def render_scalar(s: Scalar, mul: str = "*") -> str:
    """Exact text form, e.g. ``5/6``, ``alpha - 1`` or ``-(1/2)*a^-2*b``."""
    if not isinstance(s, ParamScalar):
        return _rational(Fraction(s))
    if not s.terms:
        return "0"
    out = ""
    for k, (exps, c) in enumerate(s.terms):
        t = _term(s.ctx, exps, c, mul)
        if k == 0:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


def render_coefficient(s: Scalar, mul: str = "*") -> tuple[bool, str]:
    """Split a nonzero coefficient into ``(negative, body)`` for use in a product.

    ``body`` is empty when the coefficient is ``±1``; sums are parenthesized.
    """
    if isinstance(s, ParamScalar):
        if s.is_constant():
            s = s.constant_value()
        elif len(s.terms) > 1:
            neg = s.terms[0][1] < 0
            return neg, f"({render_scalar(-s if neg else s, mul)})"
        else:
            exps, c = s.terms[0]
            return c < 0, _term(s.ctx, exps, abs(c), mul)
    q = Fraction(s)
    neg, q = q < 0, abs(q)
    if q == 1:
        return neg, ""
    return neg, _rational(q) if q.denominator == 1 else f"({_rational(q)})"
