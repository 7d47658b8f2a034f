"""Words in the free monoid and noncommutative polynomials.

A word is a tuple of generator indices ``1..n``; the empty tuple is the
identity.  Words are compared in degree-lexicographic order with
``x1 < x2 < ... < xn``.  :class:`NCPoly` keeps its support sorted in
descending deglex order, so the leading term is always the first one.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .coeff import ParamContext, Scalar, as_scalar, render_coefficient
from .errors import ContextError, EmptyPolynomialError

Word = tuple[int, ...]

LT, EQ, GT = -1, 0, 1


def deglex_key(w: Word):
    return (len(w), w)


def word_cmp_deglex(u: Word, v: Word) -> int:
    """Return ``LT``, ``EQ`` or ``GT`` comparing ``u`` with ``v`` in deglex."""
    ku, kv = deglex_key(u), deglex_key(v)
    return (ku > kv) - (ku < kv)


def is_standard(w: Word) -> bool:
    """True iff the generator indices of ``w`` never decrease."""
    return all(a <= b for a, b in zip(w, w[1:]))


def first_descent(w: Word) -> int | None:
    """Least position ``k`` with ``w[k] > w[k+1]``, or ``None``."""
    for k in range(len(w) - 1):
        if w[k] > w[k + 1]:
            return k
    return None


def count_standard_words(n: int, d: int) -> int:
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return comb(d + n - 1, n - 1)


def render_word(w: Word, names: Sequence[str] | None = None) -> str:
    """``x1*x2^2*x3`` style rendering; runs of one generator are collapsed."""
    if not w:
        return "1"
    parts = []
    k = 0
    while k < len(w):
        g = w[k]
        run = 1
        while k + run < len(w) and w[k + run] == g:
            run += 1
        name = names[g - 1] if names else f"x{g}"
        parts.append(name if run == 1 else f"{name}^{run}")
        k += run
    return "*".join(parts)


class NCPoly:
    """Element of the free associative algebra on ``n`` generators.

    ``ctx`` is the parameter context of the coefficients, ``None`` for
    rational coefficients.  Instances are immutable and hashable.
    """

    __slots__ = ("n", "ctx", "_terms", "_items", "_hash")

    def __init__(self, n: int, terms: Mapping[Word, object] | Iterable = (), ctx: ParamContext | None = None):
        self.n = n
        self.ctx = ctx
        if isinstance(terms, Mapping):
            terms = terms.items()
        clean: dict = {}
        for w, c in terms:
            w = tuple(w)
            for g in w:
                if not 1 <= g <= n:
                    raise ContextError(f"generator index {g} outside 1..{n}")
            c = as_scalar(c, ctx)
            if w in clean:
                c = clean[w] + c
            clean[w] = c
        self._items = tuple(
            sorted(((w, c) for w, c in clean.items() if c != 0), key=lambda t: deglex_key(t[0]), reverse=True)
        )
        self._terms = dict(self._items)
        self._hash = None

    @classmethod
    def zero(cls, n, ctx=None):
        return cls(n, (), ctx)

    @classmethod
    def monomial(cls, n, word, coeff=1, ctx=None):
        return cls(n, [(tuple(word), coeff)], ctx)

    @classmethod
    def one(cls, n, ctx=None):
        return cls.monomial(n, (), 1, ctx)

    @classmethod
    def gen(cls, n, i, ctx=None):
        return cls.monomial(n, (i,), 1, ctx)

    # -- container protocol ---------------------------------------------
    def __iter__(self) -> Iterator[tuple[Word, Scalar]]:
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def __bool__(self):
        return bool(self._items)

    def __getitem__(self, w: Word) -> Scalar:
        return self._terms.get(tuple(w), as_scalar(0, self.ctx))

    def __contains__(self, w):
        return tuple(w) in self._terms

    def support(self) -> list[Word]:
        return [w for w, _ in self._items]

    def items(self):
        return self._items

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.n == other.n and self.ctx == other.ctx and self._items == other._items

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.ctx, self._items))
        return self._hash

    # -- structure ------------------------------------------------------
    def leading(self) -> tuple[Word, Scalar]:
        if not self._items:
            raise EmptyPolynomialError("the zero polynomial has no leading term")
        return self._items[0]

    def degree(self) -> int:
        """Length of the leading word; -1 for the zero polynomial."""
        return len(self._items[0][0]) if self._items else -1

    def is_standard(self) -> bool:
        return all(is_standard(w) for w, _ in self._items)

    def is_normal(self) -> bool:
        """No term has larger degree than the leading term."""
        return all(len(w) <= self.degree() for w, _ in self._items)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "NCPoly"):
        if self.n != other.n:
            raise ContextError(f"generator counts differ: {self.n} vs {other.n}")
        if self.ctx != other.ctx:
            raise ContextError("parameter contexts differ")

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        return NCPoly(self.n, self._items + other._items, self.ctx)

    def __neg__(self):
        return NCPoly(self.n, [(w, -c) for w, c in self._items], self.ctx)

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = as_scalar(c, self.ctx)
        return NCPoly(self.n, [(w, c * d) for w, d in self._items], self.ctx)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return NCPoly(self.n, [(u + v, a * b) for u, a in self._items for v, b in other._items], self.ctx)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        return self.scale(other)

    def lmul(self, word: Word) -> "NCPoly":
        """``word * self``."""
        return NCPoly(self.n, [(tuple(word) + w, c) for w, c in self._items], self.ctx)

    def rmul(self, word: Word) -> "NCPoly":
        """``self * word``."""
        return NCPoly(self.n, [(w + tuple(word), c) for w, c in self._items], self.ctx)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = NCPoly.one(self.n, self.ctx)
        for _ in range(k):
            out = out * self
        return out

    # -- rendering ------------------------------------------------------
    def render(self, names: Sequence[str] | None = None) -> str:
        if not self._items:
            return "0"
        out = ""
        for k, (w, c) in enumerate(self._items):
            neg, body = render_coefficient(c)
            word = render_word(w, names) if w else ""
            piece = "*".join(p for p in (body, word) if p) or "1"
            if k == 0:
                out = ("-" if neg else "") + piece
            else:
                out += (" - " if neg else " + ") + piece
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"NCPoly({self.render()!r})"


def poly_add(f: NCPoly, g: NCPoly) -> NCPoly:
    return f + g


def poly_scale(c, f: NCPoly) -> NCPoly:
    return f.scale(c)


def poly_mul(f: NCPoly, g: NCPoly) -> NCPoly:
    return f * g


def leading(f: NCPoly) -> tuple[Word, Scalar]:
    return f.leading()
