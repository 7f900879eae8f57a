"""Command-line front door.

Subcommands: ``pres`` emits presentations, ``verify`` runs the oracle
suites, ``reduce`` normalizes single words, ``tc`` enumerates cosets,
``h1`` computes abelianizations.  Exit codes: 0 success or pass, 1
verification failure, 2 usage error, 3 resource overflow.  Output is
deterministic byte-for-byte; truncation bounds are always explicit
flags, never defaults.
"""

from __future__ import annotations

import argparse
import sys

from braidhomotopy import extension as ext
from braidhomotopy import handles, magnus, presentations as pres, verify
from braidhomotopy.perms import UnsupportedLetterError
from braidhomotopy.words import AlphabetError, ContextError, format_word, parse_word


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="braidhomotopy", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_flags(p, families, required=True):
        p.add_argument("--family", required=required, choices=families)
        p.add_argument("-n", type=int, required=required, help="number of strands")
        p.add_argument("-g", type=int, default=None, help="genus of the surface")
        grp = p.add_mutually_exclusive_group()
        grp.add_argument("--closed", dest="closed", action="store_true", default=None)
        grp.add_argument("--punctured", dest="closed", action="store_false")
        p.add_argument("--lh-bound", type=int, default=None,
                       help="shortlex truncation of the conjugator h (mandatory "
                            "for families with self-commutation relators)")

    p = sub.add_parser("pres", help="construct and print a presentation")
    add_family_flags(p, ["surface", "homotopy", "goldsmith", "pure", "symmetric", "quotient"])
    p.add_argument("--with-auxiliary", action="store_true",
                   help="include redundant generators with their defining relations")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("check", choices=["purity", "eq31", "eq32", "transport", "a-expansion"])
    p.add_argument("--family", choices=["surface", "homotopy", "goldsmith", "pure",
                                        "symmetric", "quotient"], default=None)
    p.add_argument("-n", type=int, default=None)
    p.add_argument("-g", type=int, default=None)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--closed", dest="closed", action="store_true", default=None)
    grp.add_argument("--punctured", dest="closed", action="store_false")
    p.add_argument("--lh-bound", type=int, default=None)
    p.add_argument("--input", default=None, help="verify a serialized presentation (JSON)")
    p.add_argument("--inject-fault", action="store_true",
                   help="corrupt one site on purpose; the suite must fail")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None)

    p = sub.add_parser("reduce", help="reduce words / decide triviality")
    p.add_argument("words", nargs="*", help="words in the token grammar")
    p.add_argument("--oracle", choices=["free", "dehornoy", "magnus"], default="free")
    p.add_argument("--compare", action="store_true",
                   help="compare two crossing words in the left order")
    p.add_argument("-n", type=int, default=None)
    p.add_argument("-g", type=int, default=None)
    p.add_argument("--step-cap", type=int, default=handles.DEFAULT_STEP_CAP)
    p.add_argument("--input", default=None, help="read words from a file, one per line")
    p.add_argument("--output", default=None)

    p = sub.add_parser(
        "tc", help="Todd-Coxeter coset enumeration",
        description="Enumerate cosets of a finitely generated subgroup. Only "
                    "finite-index configurations can close; an infinite-index "
                    "run overflows by design and exits with code 3.")
    add_family_flags(p, ["surface", "homotopy", "goldsmith", "pure", "symmetric", "quotient"])
    p.add_argument("--subgroup", choices=["trivial", "pure"], default="trivial",
                   help="'pure' uses the loop/band generating set")
    p.add_argument("--subgroup-word", action="append", default=[],
                   help="extra subgroup generator (token grammar); repeatable")
    p.add_argument("--max-cosets", type=int, default=100_000)
    p.add_argument("--table-out", default=None, help="dump the coset table as CSV")
    p.add_argument("--output", default=None)

    p = sub.add_parser("h1", help="abelianization via Smith normal form")
    add_family_flags(p, ["surface", "homotopy", "goldsmith", "pure", "symmetric", "quotient"],
                     required=False)
    p.add_argument("--input", default=None, help="presentation JSON instead of flags")
    p.add_argument("--expect", default=None,
                   help="fail (exit 1) unless the result equals this, e.g. 'Z^2 + Z/2'")
    p.add_argument("--output", default=None)

    return parser


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise _UsageError(message)


def _build_presentation(args) -> pres.Presentation:
    family = args.family
    n, g, closed, bound = args.n, args.g, args.closed, args.lh_bound
    if family == "surface":
        _require(g is not None, "surface needs -g")
        return pres.surface_braid_presentation(n, g)
    if family == "homotopy":
        _require(g is not None, "homotopy needs -g")
        _require(closed is not None, "homotopy needs --closed or --punctured")
        _require(bound is not None, "homotopy needs an explicit --lh-bound")
        return pres.homotopy_generalized_presentation(
            n, g, closed, bound, with_auxiliary=getattr(args, "with_auxiliary", False))
    if family == "goldsmith":
        _require(g in (None, 0), "goldsmith is the disk case; drop -g")
        _require(bound is not None, "goldsmith needs an explicit --lh-bound")
        return pres.goldsmith_presentation(n, bound)
    if family == "pure":
        _require(g is not None, "pure needs -g")
        _require(closed is not None, "pure needs --closed or --punctured")
        _require(bound is not None, "pure needs an explicit --lh-bound")
        return pres.pure_homotopy_presentation(n, g, closed, bound)
    if family == "symmetric":
        return pres.symmetric_presentation(n)
    if family == "quotient":
        _require(g is not None, "quotient needs -g")
        _require(bound is not None, "quotient needs an explicit --lh-bound")
        return pres.homotopy_quotient(pres.surface_braid_presentation(n, g), bound)
    raise _UsageError(f"unknown family {family}")


def _cmd_pres(args, out, err) -> int:
    p = _build_presentation(args)
    if args.format == "json":
        out.write(pres.presentation_to_json(p))
    else:
        out.write(pres.presentation_to_text(p))
    return 0


def _load_or_build(args) -> pres.Presentation:
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            return pres.presentation_from_json(fh.read())
    _require(args.family is not None, "need --family or --input")
    _require(args.n is not None, "need -n")
    return _build_presentation(args)


def _cmd_verify(args, out, err) -> int:
    if args.check == "purity":
        p = _load_or_build(args)
        if args.inject_fault:
            crossing = next((gen for gen in p.generators if gen.kind == "s"), None)
            _require(crossing is not None,
                     "purity fault injection needs a crossing generator")
            fault = pres.Word(((crossing, 1),), (p.n, p.g))
            p = p.with_relator("FAULT", fault)
        report = verify.purity_report(p)
    elif args.check == "a-expansion":
        _require(args.n is not None and args.g is not None, "a-expansion needs -n and -g")
        report = verify.loop_expansion_comparison(args.n, args.g)
    else:
        _require(args.n is not None, "identity checks need -n")
        kind = {"eq31": "eq31", "eq32": "eq32", "transport": "lh_free_identity"}[args.check]
        report = verify.identity_check(kind, args.n, args.g if args.g else 1,
                                       args.lh_bound if args.lh_bound is not None else 3,
                                       fault=args.inject_fault)
    out.write(report.to_json() if args.format == "json" else report.to_text())
    return 0 if report.passed else 1


def _cmd_reduce(args, out, err, stdin_text: str) -> int:
    texts = list(args.words)
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            texts += [line for line in fh.read().splitlines() if line.strip()]
    if not texts and stdin_text:
        texts = [line for line in stdin_text.splitlines() if line.strip()]
    _require(bool(texts), "no input words")
    words = [parse_word(t, args.n, args.g) for t in texts]
    if args.compare:
        _require(args.oracle == "dehornoy", "--compare needs --oracle dehornoy")
        _require(len(words) == 2, "--compare needs exactly two words")
        verdict = handles.braid_compare(words[0], words[1], args.step_cap)
        out.write(verdict.value + "\n")
        return 0
    for w in words:
        if args.oracle == "free":
            out.write(format_word(w) + "\n")
        elif args.oracle == "dehornoy":
            out.write(handles.braid_verdict(w, args.step_cap) + "\n")
        else:
            verdict = "trivial" if magnus.is_rf_trivial(w) else "nontrivial"
            out.write(verdict + "\n")
    return 0


def _cmd_tc(args, out, err) -> int:
    p = _build_presentation(args)
    subgroup = []
    if args.subgroup == "pure":
        _require(p.g is not None and p.g >= 1, "--subgroup pure needs a surface family")
        n, g = p.n, p.g
        subgroup += [pres.expand_a(i, r, n, g) for i in range(1, n + 1)
                     for r in range(1, 2 * g + 1)]
        subgroup += [pres.expand_t(i, j, n, g) for i in range(1, n)
                     for j in range(i + 1, n + 1)]
    subgroup += [parse_word(t, p.n, p.g) for t in args.subgroup_word]
    table = ext.todd_coxeter(p, subgroup, args.max_cosets)
    if args.table_out:
        with open(args.table_out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(table.to_csv())
    if table.status == "overflow":
        err.write(f"overflow after {args.max_cosets} cosets\n")
        return 3
    out.write(f"{table.coset_count}\n")
    return 0


def _cmd_h1(args, out, err) -> int:
    p = _load_or_build(args)
    invariants = verify.h1(p)
    out.write(str(invariants) + "\n")
    if args.expect is not None:
        expected = verify.parse_invariants(args.expect)
        if invariants != expected:
            err.write(f"expected {expected}, computed {invariants}\n")
            return 1
    return 0


def run_command(argv: list[str], stdin: bytes = b"") -> tuple[int, bytes, bytes]:
    """Run one CLI invocation; returns (exit code, stdout, stderr)."""
    import io

    out, err = io.StringIO(), io.StringIO()
    parser = _build_parser()
    code = 0
    args = None
    try:
        args = parser.parse_args(argv)
        if args.command == "pres":
            code = _cmd_pres(args, out, err)
        elif args.command == "verify":
            code = _cmd_verify(args, out, err)
        elif args.command == "reduce":
            code = _cmd_reduce(args, out, err, stdin.decode("utf-8"))
        elif args.command == "tc":
            code = _cmd_tc(args, out, err)
        else:
            code = _cmd_h1(args, out, err)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        code = 2
    except handles.StepLimitError as exc:
        err.write(f"resource limit: {exc}\n")
        code = 3
    except (AlphabetError, ContextError, UnsupportedLetterError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        code = 2
    except OSError as exc:
        err.write(f"i/o error: {exc}\n")
        code = 2
    text = out.getvalue()
    if args is not None and getattr(args, "output", None):
        try:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            text = ""
        except OSError as exc:
            err.write(f"i/o error: {exc}\n")
            code = 2
    return code, text.encode("utf-8"), err.getvalue().encode("utf-8")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    stdin = b""
    if argv and argv[0] == "reduce":
        try:
            if not sys.stdin.isatty():
                stdin = sys.stdin.buffer.read()
        except (OSError, ValueError):
            stdin = b""
    code, out, err = run_command(argv, stdin)
    sys.stdout.buffer.write(out)
    sys.stderr.buffer.write(err)
    sys.stdout.flush()
    sys.stderr.flush()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
