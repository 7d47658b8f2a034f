"""Command-line interface.

Exit codes: 0 success or PBW, 1 negative verdict, 2 bad input,
3 undecidable (symbolic branch or search budget exhausted).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib import resources
from itertools import product
from pathlib import Path

from . import __version__
from .coeff import as_scalar, evaluate, render_scalar
from .diamond import check_pbw
from .errors import (
    ClassificationError,
    ContextError,
    ParseError,
    SearchBudgetError,
    ShapeError,
    SkewSystemError,
    VerdictRequiredError,
)
from .freealg import NCPoly, render_word
from .presentio import build_system, parse_assignment, parse_polynomial, parse_presentation, substitute
from .reduce import DEFAULT_MAX_DEGREE, DEFAULT_NODE_CAP, normal_forms_exhaustive, stred
from .skewcheck import (
    check_conditions,
    classify,
    derive_conditions,
    extract_coefficients,
    verify_conditions,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3
INPUT_ERRORS = (ParseError, SkewSystemError, ShapeError, ContextError, OSError, UnicodeDecodeError)
XYZ = ("x", "y", "z")


def corpus_files() -> dict[str, str]:
    """Shipped example name -> file text."""
    root = resources.files("skewpbw") / "corpus"
    return {p.name[:-5]: p.read_text() for p in sorted(root.iterdir(), key=lambda p: p.name) if p.name.endswith(".pres")}


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def corpus_digests() -> dict[str, str]:
    return {_digest(text.encode()): name for name, text in corpus_files().items()}


class Loaded:
    """A presentation file after ``--set`` substitution and validation."""

    def __init__(self, path: str, assignments: list[str]):
        data = Path(path).read_bytes()
        self.digest = _digest(data)
        self.example = corpus_digests().get(self.digest)
        values = dict(parse_assignment(a) for a in assignments)
        self.values = values
        self.presentation = substitute(parse_presentation(data.decode("utf-8")), values)
        self.system = build_system(self.presentation)
        self.names = self.presentation.generators

    def input_block(self) -> dict:
        return {
            "digest": self.digest,
            "corpus_example": self.example,
            "generators": list(self.names),
            "parameters": [{"name": n, "unit": u} for n, u in self.presentation.params],
            "set": {k: render_scalar(v) for k, v in sorted(self.values.items())},
        }

    def render(self, f: NCPoly) -> str:
        return f.render(self.names)


# -- commands -----------------------------------------------------------------


def _oracle(loaded: Loaded, args) -> dict:
    system = loaded.system
    words = [w for d in range(args.max_degree + 1) for w in product(range(1, system.n + 1), repeat=d)]
    ambiguous = []
    for w in words:
        forms = normal_forms_exhaustive(
            NCPoly.monomial(system.n, w, 1, system.ctx),
            system,
            max_degree=args.max_degree,
            node_cap=args.node_cap,
            stop_after=2,
        )
        if len(forms) != 1:
            ambiguous.append(render_word(w, loaded.names))
    return {"max_degree": args.max_degree, "words": len(words), "ambiguous_words": ambiguous}


def cmd_check(args) -> tuple[int, dict, list[str]]:
    loaded = Loaded(args.file, args.set)
    verdict = check_pbw(loaded.system)
    overlaps = []
    lines = [f"pbw: {str(verdict.is_pbw).lower()}"]
    for w in verdict.witnesses:
        row = {
            "word": render_word(w.overlap.word, loaded.names),
            "g": loaded.render(w.g),
            "h": loaded.render(w.h),
            "difference": loaded.render(w.difference),
            "resolved": w.resolved,
        }
        overlaps.append(row)
        lines.append(f"overlap {row['word']}: {'resolved' if w.resolved else 'NOT resolved'}")
        lines += [f"  g = {row['g']}", f"  h = {row['h']}", f"  g - h = {row['difference']}"]
    result = {
        "pbw": verdict.is_pbw,
        "first_failure": render_word(verdict.first_failure.word, loaded.names) if verdict.first_failure else None,
        "overlaps": overlaps,
    }
    if args.oracle:
        oracle = _oracle(loaded, args)
        oracle["agrees"] = (not oracle["ambiguous_words"]) == verdict.is_pbw
        result["oracle"] = oracle
        unique = oracle["words"] - len(oracle["ambiguous_words"])
        lines.append(
            f"oracle: {unique}/{oracle['words']} words of degree <= {args.max_degree} reduce uniquely"
            f" ({'agrees' if oracle['agrees'] else 'DISAGREES'})"
        )
        if not oracle["agrees"]:
            return EXIT_UNDECIDED, {"input": loaded.input_block(), "result": result}, lines
    code = EXIT_OK if verdict.is_pbw else EXIT_NEGATIVE
    return code, {"input": loaded.input_block(), "result": result}, lines


def cmd_normal_form(args) -> tuple[int, dict, list[str]]:
    loaded = Loaded(args.file, args.set)
    f = parse_polynomial(args.expr, loaded.names, loaded.system.ctx)
    nf, trace = stred(f, loaded.system)
    result = {"expr": loaded.render(f), "normal_form": loaded.render(nf)}
    lines = []
    if args.trace:
        result["trace"] = [s.render(loaded.names) for s in trace.steps]
        lines += result["trace"]
    lines.append(result["normal_form"])
    return EXIT_OK, {"input": loaded.input_block(), "result": result}, lines


def cmd_classify(args) -> tuple[int, dict, list[str]]:
    loaded = Loaded(args.file, args.set)
    coeffs = extract_coefficients(loaded.system)
    block = {"input": loaded.input_block()}
    try:
        c = classify(coeffs, loaded.system)
    except VerdictRequiredError as exc:
        block["result"] = {"pbw": False, "refused": str(exc)}
        return EXIT_NEGATIVE, block, [f"not classified: {exc}"]
    except ClassificationError as exc:
        block["result"] = {"pbw": True, "indeterminate": str(exc), "predicates": list(exc.predicates)}
        return EXIT_UNDECIDED, block, [f"indeterminate: {exc}"] + [f"  needs {p}" for p in exc.predicates]
    params = {"alpha": render_scalar(c.alpha), "beta": render_scalar(c.beta), "gamma": render_scalar(c.gamma)}
    block["result"] = {"pbw": True, "case": c.case, "subcase": c.subcase, "parameters": params, "notes": list(c.notes)}
    head = f"case: {c.case}" + (f", subcase: {c.subcase}" if c.subcase else "")
    lines = [head, ", ".join(f"{k} = {v}" for k, v in params.items())] + list(c.notes)
    return EXIT_OK, block, lines


def _row(ident) -> dict:
    return {
        "label": ident.label,
        "monomial": render_word(ident.monomial, XYZ),
        "identity": ident.render(),
    }


def cmd_derive_conditions(args) -> tuple[int, dict, list[str]]:
    derived = derive_conditions()
    rows = [_row(d) for d in derived]
    lines = [f"{r['label']:<9} [{r['monomial']}]  {r['identity']}" for r in rows]
    result = {"identities": rows}
    block: dict = {"result": result}
    code = EXIT_OK
    if args.verify:
        checks = verify_conditions(derived)
        match = len(derived) == 10 and all(c.matches for c in checks)
        result["verify"] = {
            "match": match,
            "rows": [{"label": c.label, "match": c.matches, "exact": c.exact} for c in checks],
            "misprints": [
                {"label": c.label, "misprint_matches": c.misprint_matches}
                for c in checks
                if c.misprint_matches is not None
            ],
        }
        lines.append(f"match: {str(match).lower()}")
        for c in checks:
            if c.misprint_matches is False:
                lines.append(f"  note: the misprinted form of {c.label} does not follow from the overlap")
        code = EXIT_OK if match else EXIT_NEGATIVE
    if args.substitute:
        loaded = Loaded(args.substitute, args.set)
        block["input"] = loaded.input_block()
        coeffs = extract_coefficients(loaded.system)
        report = check_conditions(coeffs)
        bindings = coeffs.bindings()
        one = as_scalar(1, coeffs.ctx)
        sub_rows = []
        lines.append(f"substituted {args.substitute}:")
        for d, rec in zip(derived, report.records):
            lhs = evaluate(d.lhs, bindings, one)
            rhs = evaluate(d.rhs, bindings, one)
            consistent = (lhs - rhs == 0) == rec.satisfied
            sub_rows.append(
                {
                    "label": rec.label,
                    "lhs": render_scalar(rec.lhs),
                    "rhs": render_scalar(rec.rhs),
                    "satisfied": rec.satisfied,
                    "consistent": consistent,
                }
            )
            status = "satisfied" if rec.satisfied else "VIOLATED"
            lines.append(f"{rec.label:<9} {render_scalar(rec.lhs)} = {render_scalar(rec.rhs)}  {status}")
        result["substitution"] = {"all_satisfied": report.ok, "rows": sub_rows}
        if not report.ok:
            code = max(code, EXIT_NEGATIVE)
    return code, block, lines


# -- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--set", action="append", default=[], metavar="NAME=VALUE", help="substitute a parameter")
    common.add_argument("--oracle", action="store_true", help="cross-check with exhaustive reduction")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE, metavar="D")
    common.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP, metavar="N")
    common.add_argument("--trace", action="store_true", help="print reduction steps")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    parser = argparse.ArgumentParser(prog="skewpbw", description="PBW checks for skew polynomial presentations")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide whether standard monomials form a basis")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("normal-form", parents=[common], help="reduce an expression to standard form")
    p.add_argument("file")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("classify", parents=[common], help="case of a 3-generator PBW algebra")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("derive-conditions", parents=[common], help="recompute the ten coefficient identities")
    p.add_argument("--verify", action="store_true", help="compare with the stored identities")
    p.add_argument("--substitute", metavar="FILE", help="evaluate the identities on a presentation")
    p.set_defaults(func=cmd_derive_conditions)
    return parser


def run(argv=None) -> tuple[int, dict, list[str], argparse.Namespace]:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code, block, lines = args.func(args)
    except INPUT_ERRORS as exc:
        code, block, lines = EXIT_INPUT, {"error": {"kind": "input", "message": str(exc)}}, [f"error: {exc}"]
    except SearchBudgetError as exc:
        code, block, lines = EXIT_UNDECIDED, {"error": {"kind": "budget", "message": str(exc)}}, [f"error: {exc}"]
    report = {"tool": "skewpbw", "version": __version__, "command": args.command, "exit_code": code, **block}
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return code, report, lines, args


def main(argv=None) -> int:
    code, report, lines, args = run(argv)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        stream = sys.stderr if code == EXIT_INPUT else sys.stdout
        print("\n".join(lines), file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
