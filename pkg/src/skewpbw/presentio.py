"""Reading and writing presentation files.

A presentation lists its generators (the order is the deglex order), its
parameters and one relation per descending pair of generators::

    generators: x, y, z
    unit nu            # invertible parameter, negative powers allowed
    param a            # ordinary parameter
    z*y = y*z - z      # rewrite form  x_j*x_i = expr
    z*x - nu*x*z = y   # bracket form, solved for the descending word

Statements may also be separated by ``;``.  ``#`` starts a comment.
Numbers are exact: integers and ``p/q`` quotients only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .coeff import ParamContext, as_scalar, scalar_invert, scalar_is_unit
from .errors import AlgebraError, ParseError
from .freealg import NCPoly
from .reduce import Rule, SkewSystem, descending_pairs, validate_skew_system

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<float>\d+\.\d*|\.\d+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()=,:;])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(line: str, lineno: int) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None:
            raise ParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        if kind == "float":
            raise ParseError("floating point numbers are not accepted; write p/q", lineno, pos + 1)
        if kind != "ws":
            tokens.append(Token(kind, m.group(), lineno, pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", lineno, len(line) + 1))
    return tokens


class _ExprParser:
    """Recursive descent over one statement, evaluating straight into NCPoly."""

    def __init__(self, tokens: list[Token], generators: Sequence[str], ctx: ParamContext | None):
        self.tokens = tokens
        self.pos = 0
        self.n = len(generators)
        self.gens = {name: k + 1 for k, name in enumerate(generators)}
        self.ctx = ctx

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message, tok=None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def accept(self, text) -> Token | None:
        if self.tok.kind == "op" and self.tok.text == text:
            tok = self.tok
            self.pos += 1
            return tok
        return None

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of line"
            raise self.error(f"expected {text!r}, found {found!r}")

    def const(self, value) -> NCPoly:
        return NCPoly.monomial(self.n, (), value, self.ctx)

    def expr(self) -> NCPoly:
        self.accept("+")
        acc = self.term()
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> NCPoly:
        acc = self.unary()
        while True:
            if self.accept("*"):
                acc = acc * self.unary()
            elif tok := self.accept("/"):
                acc = acc.scale(self._unit_value(self.unary(), tok, invert=True))
            else:
                return acc

    def unary(self) -> NCPoly:
        if self.accept("-"):
            return -self.unary()
        return self.power()

    def power(self) -> NCPoly:
        base = self.atom()
        if tok := self.accept("^"):
            negative = bool(self.accept("-"))
            if self.tok.kind != "int":
                raise self.error("exponent must be an integer")
            k = int(self.tok.text)
            self.pos += 1
            if negative and k:
                base = self.const(self._unit_value(base, tok, invert=True))
            return base**k
        return base

    def atom(self) -> NCPoly:
        tok = self.tok
        if tok.kind == "int":
            self.pos += 1
            return self.const(int(tok.text))
        if tok.kind == "name":
            self.pos += 1
            if tok.text in self.gens:
                return NCPoly.gen(self.n, self.gens[tok.text], self.ctx)
            if self.ctx is not None and tok.text in self.ctx.names:
                return self.const(self.ctx.param(tok.text))
            raise self.error(f"unknown symbol {tok.text!r}", tok)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        found = tok.text or "end of line"
        raise self.error(f"expected a number, name or '(', found {found!r}")

    def _unit_value(self, poly: NCPoly, tok: Token, invert: bool):
        if poly.degree() > 0:
            raise self.error("only scalars can be inverted", tok)
        c = poly[()]
        if not scalar_is_unit(c):
            raise self.error("division by a scalar that is not a unit", tok)
        return scalar_invert(c) if invert else c


def parse_polynomial(text: str, generators: Sequence[str], ctx: ParamContext | None = None) -> NCPoly:
    """Parse a single expression over the given generators and parameters."""
    tokens = tokenize(text, 1)
    p = _ExprParser(tokens, generators, ctx)
    poly = p.expr()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    return poly


def parse_scalar(text: str, ctx: ParamContext | None = None):
    """Parse an expression that involves parameters only."""
    return parse_polynomial(text, (), ctx)[()]


@dataclass(frozen=True)
class Relation:
    j: int
    i: int
    rhs: NCPoly


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    params: tuple[tuple[str, bool], ...]
    relations: tuple[Relation, ...]

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def ctx(self) -> ParamContext | None:
        if not self.params:
            return None
        return ParamContext(tuple(p for p, _ in self.params), tuple(u for _, u in self.params))

    def render(self) -> str:
        lines = ["generators: " + ", ".join(self.generators)]
        lines += [f"{'unit' if unit else 'param'} {name}" for name, unit in self.params]
        for rel in self.relations:
            lhs = f"{self.generators[rel.j - 1]}*{self.generators[rel.i - 1]}"
            lines.append(f"{lhs} = {rel.rhs.render(self.generators)}")
        return "\n".join(lines) + "\n"


def _statements(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = tokenize(line, lineno)
        stmt: list[Token] = []
        for tok in tokens:
            if tok.kind == "end" or (tok.kind == "op" and tok.text == ";"):
                if stmt:
                    yield stmt + [Token("end", "", tok.line, tok.col)]
                stmt = []
            else:
                stmt.append(tok)


def _name_list(tokens: list[Token]) -> list[Token]:
    names = []
    k = 0
    while True:
        tok = tokens[k]
        if tok.kind != "name":
            raise ParseError(f"expected a name, found {tok.text or 'end of line'!r}", tok.line, tok.col)
        names.append(tok)
        k += 1
        if tokens[k].kind == "end":
            return names
        if tokens[k].text != ",":
            raise ParseError(f"expected ',', found {tokens[k].text!r}", tokens[k].line, tokens[k].col)
        k += 1


def parse_presentation(text: str) -> Presentation:
    generators: list[str] | None = None
    params: list[tuple[str, bool]] = []
    raw_relations: list[tuple[list[Token], int, int]] = []
    last = Token("end", "", 1, 1)

    for stmt in _statements(text):
        head = stmt[0]
        last = stmt[-1]
        if head.kind == "name" and head.text == "generators" and stmt[1].text == ":":
            if generators is not None:
                raise ParseError("generators declared twice", head.line, head.col)
            names = _name_list(stmt[2:])
            generators = []
            for tok in names:
                if tok.text in generators:
                    raise ParseError(f"duplicate generator {tok.text!r}", tok.line, tok.col)
                generators.append(tok.text)
        elif head.kind == "name" and head.text in ("unit", "param") and stmt[1].kind == "name":
            if raw_relations:
                raise ParseError("parameters must be declared before the relations", head.line, head.col)
            for tok in _name_list(stmt[1:]):
                if generators is not None and tok.text in generators:
                    raise ParseError(f"parameter {tok.text!r} clashes with a generator", tok.line, tok.col)
                if any(tok.text == p for p, _ in params):
                    raise ParseError(f"duplicate parameter {tok.text!r}", tok.line, tok.col)
                params.append((tok.text, head.text == "unit"))
        elif any(t.kind == "op" and t.text == "=" for t in stmt):
            if generators is None:
                raise ParseError("relations must follow the 'generators:' header", head.line, head.col)
            raw_relations.append((stmt, head.line, head.col))
        else:
            raise ParseError("expected 'generators:', 'unit', 'param' or a relation", head.line, head.col)

    if generators is None:
        raise ParseError("missing 'generators:' header", 1, 1)
    clash = {p for p, _ in params} & set(generators)
    if clash:
        raise ParseError(f"parameter names clash with generators: {sorted(clash)}")

    ctx = ParamContext(tuple(p for p, _ in params), tuple(u for _, u in params)) if params else None
    relations: dict[tuple[int, int], Relation] = {}
    for stmt, line, col in raw_relations:
        rel = _relation(stmt, generators, ctx)
        if (rel.j, rel.i) in relations:
            pair = f"{generators[rel.j - 1]}*{generators[rel.i - 1]}"
            raise ParseError(f"duplicate relation for {pair}", line, col)
        relations[(rel.j, rel.i)] = rel
    missing = [p for p in descending_pairs(len(generators)) if p not in relations]
    if missing:
        names = ", ".join(f"{generators[j - 1]}*{generators[i - 1]}" for j, i in missing)
        raise ParseError(f"missing relation for {names}", last.line, last.col)
    ordered = tuple(relations[p] for p in descending_pairs(len(generators)))
    return Presentation(tuple(generators), tuple(params), ordered)


def _relation(stmt: list[Token], generators: Sequence[str], ctx) -> Relation:
    eq = next(k for k, t in enumerate(stmt) if t.kind == "op" and t.text == "=")
    lhs_tokens = stmt[:eq] + [Token("end", "", stmt[eq].line, stmt[eq].col)]
    rhs_tokens = stmt[eq + 1 :]
    if len(lhs_tokens) == 1:
        raise ParseError("empty left-hand side", stmt[eq].line, stmt[eq].col)
    lhs = _parse_tokens(lhs_tokens, generators, ctx)
    rhs = _parse_tokens(rhs_tokens, generators, ctx)
    head = stmt[0]
    n = len(generators)

    if len(lhs) == 1 and lhs.leading()[1] == 1 and len(lhs.leading()[0]) == 2:
        a, b = lhs.leading()[0]
        if a > b:
            return Relation(a, b, rhs)
        ga, gb = generators[a - 1], generators[b - 1]
        if a < b:
            raise ParseError(
                f"left-hand side {ga}*{gb} is not descending in generator order; rewrite it as {gb}*{ga} = ...",
                head.line,
                head.col,
            )
        raise ParseError(f"left-hand side {ga}*{gb} repeats a generator", head.line, head.col)

    quadratic = {w for w, _ in lhs if len(w) == 2}
    if len(quadratic) == 2 and lhs.degree() == 2:
        (a, b), (c, d) = sorted(quadratic)
        if a != b and (c, d) == (b, a):
            j, i = max(a, b), min(a, b)
            diff = lhs - rhs
            coeff = diff[(j, i)]
            if diff.degree() > 2 or not scalar_is_unit(coeff):
                raise ParseError("bracket relation cannot be solved for its descending word", head.line, head.col)
            rest = diff - NCPoly.monomial(n, (j, i), coeff, ctx)
            return Relation(j, i, rest.scale(-scalar_invert(coeff)))
    raise ParseError(
        "relation must read x_j*x_i = expr (j after i) or u*v - c*v*u = expr", head.line, head.col
    )


def _parse_tokens(tokens: list[Token], generators, ctx) -> NCPoly:
    p = _ExprParser(tokens, generators, ctx)
    poly = p.expr()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    return poly


def substitute(p: Presentation, values: Mapping[str, Fraction]) -> Presentation:
    """Replace parameters by rational values, dropping them from the context."""
    names = {name for name, _ in p.params}
    unknown = sorted(set(values) - names)
    if unknown:
        raise ParseError(f"--set names unknown parameter(s): {', '.join(unknown)}")
    for name, unit in p.params:
        if unit and name in values and values[name] == 0:
            raise ParseError(f"unit parameter {name} cannot be set to 0")
    if not values:
        return p
    params = tuple((name, unit) for name, unit in p.params if name not in values)
    new_ctx = ParamContext(tuple(n for n, _ in params), tuple(u for _, u in params)) if params else None
    relations = []
    for rel in p.relations:
        terms = [(w, c.substitute(values, new_ctx)) for w, c in rel.rhs]
        relations.append(Relation(rel.j, rel.i, NCPoly(p.n, terms, new_ctx)))
    return Presentation(p.generators, params, tuple(relations))


def build_system(p: Presentation, values: Mapping[str, Fraction] | None = None) -> SkewSystem:
    """Validated skew system for ``p``, after substituting ``values`` if given."""
    if values:
        p = substitute(p, values)
    rules = [Rule((rel.j, rel.i), rel.rhs) for rel in p.relations]
    return validate_skew_system(rules, p.n, p.ctx)


def parse_assignment(text: str) -> tuple[str, Fraction]:
    """``NAME=VALUE`` with an exact rational value."""
    name, sep, value = text.partition("=")
    name = name.strip()
    if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
        raise ParseError(f"expected NAME=VALUE, got {text!r}")
    try:
        q = parse_scalar(value.strip())
    except AlgebraError as exc:
        raise ParseError(f"bad value in {text!r}: {exc}") from None
    return name, as_scalar(q, None)


__all__ = [
    "Presentation",
    "Relation",
    "parse_presentation",
    "parse_polynomial",
    "parse_scalar",
    "parse_assignment",
    "substitute",
    "build_system",
]
