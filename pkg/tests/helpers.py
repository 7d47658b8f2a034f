"""Shared builders for the test suite."""

import random
from fractions import Fraction
from itertools import product
from pathlib import Path

from skewpbw.cli import corpus_files
from skewpbw.freealg import NCPoly
from skewpbw.presentio import build_system, parse_presentation
from skewpbw.skewcheck import PAIRS, SkewCoefficients, rules_from_coefficients

CORPUS_DIR = Path(__file__).resolve().parents[1] / "src" / "skewpbw" / "corpus"
UNITS = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)]
TAILS = [Fraction(v) for v in (-2, -1, 1, 2)]


def corpus_system(name, **values):
    p = parse_presentation(corpus_files()[name])
    return p, build_system(p, {k: Fraction(v) for k, v in values.items()})


def pbw_corpus():
    """Shipped PBW examples as (name, presentation, system); nu fixed to 2."""
    out = []
    for name in ("dispin", "woronowicz", "quantum3space", "e_i", "e_ii", "e_iii", "e_iv", "e_v"):
        values = {"nu": 2} if name == "woronowicz" else {}
        p, q = corpus_system(name, **values)
        out.append((name, p, q))
    return out


def random_coefficients(rng: random.Random, zero_prob: float) -> SkewCoefficients:
    r = {}
    for pair in PAIRS:
        for t in range(4):
            r[(t, pair)] = Fraction(0) if rng.random() < zero_prob else rng.choice(TAILS)
    return SkewCoefficients(None, rng.choice(UNITS), rng.choice(UNITS), rng.choice(UNITS), r)


def random_system(rng: random.Random, zero_prob: float):
    c = random_coefficients(rng, zero_prob)
    return c, rules_from_coefficients(c)


def all_words(n, max_degree):
    return [w for d in range(max_degree + 1) for w in product(range(1, n + 1), repeat=d)]


def standard_words(n, d):
    return [w for w in product(range(1, n + 1), repeat=d) if list(w) == sorted(w)]


def random_poly(rng: random.Random, n, max_degree=3, terms=4, ctx=None, standard=False):
    out = []
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, max_degree)
        w = tuple(rng.randint(1, n) for _ in range(d))
        if standard:
            w = tuple(sorted(w))
        out.append((w, Fraction(rng.randint(-3, 3), rng.choice((1, 2)))))
    return NCPoly(n, out, ctx)


# one concrete instance per listed relation pattern, in bracket form
FAMILIES = {
    "a": "y*z - 2*z*y = 0; z*x - 3*x*z = 0; x*y - 5*y*x = 0",
    "b.i": "y*z - z*y = z; z*x - 2*x*z = y; x*y - y*x = x",
    "b.ii": "y*z - z*y = z; z*x - 2*x*z = 3; x*y - y*x = x",
    "b.iii": "y*z - z*y = 0; z*x - 2*x*z = y; x*y - y*x = 0",
    "b.iv": "y*z - z*y = 0; z*x - 2*x*z = 3; x*y - y*x = 0",
    "b.v": "y*z - z*y = 5*z; z*x - 2*x*z = 0; x*y - y*x = x",
    "b.vi": "y*z - z*y = z; z*x - 2*x*z = 0; x*y - y*x = 0",
    "c.i": "y*z - 2*z*y = 0; z*x - 3*x*z = y + 1; x*y - 2*y*x = 0",
    "c.ii": "y*z - 2*z*y = 0; z*x - 3*x*z = 4; x*y - 2*y*x = 0",
    "d": "y*z - 2*z*y = x + 1; z*x - 2*x*z = y + 1; x*y - 2*y*x = z + 1",
    "e.i": "y*z - z*y = x; z*x - x*z = y; x*y - y*x = z",
    "e.ii": "y*z - z*y = 0; z*x - x*z = 0; x*y - y*x = z",
    "e.iii": "y*z - z*y = 0; z*x - x*z = 0; x*y - y*x = 7",
    "e.iv": "y*z - z*y = -y; z*x - x*z = x + y; x*y - y*x = 0",
    "e.v": "y*z - z*y = -3*z; z*x - x*z = z; x*y - y*x = 0",
}


def family_system(label):
    return build_system(parse_presentation("generators: x, y, z; " + FAMILIES[label]))
