"""Command line entry point: ``flc classify|iso|verify-tables|fuzz|derive-constraints``.

Exit codes: 0 success, 1 failure, 2 usage or parse error, 3 only known-errata failures.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import Algebra
from .classifier import (
    ClassificationDataError,
    FamilyMismatch,
    MultipleSubsetsMatched,
    NoSubsetMatched,
    PatternNotInvertible,
    RequiresAlgebraicExtension,
    Verdict,
    default_classifier,
    find_witness,
    load_classification,
    _build_records,
)
from .constraints import VARIANTS, compare_with_lemma
from .families import FAMILIES, TemplateMismatch, extract_params, normalize_family, param_to_json
from .gaussrat import as_gauss
from .poly import DenominatorVanished
from .verify import TABLES, ErrataAllowlist, partition_fuzz, verify_tables

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ERRATA = 0, 1, 2, 3
READINGS = ("active", "as_printed", "table_aligned")


class ParseError(ValueError):
    """Input that is not valid JSON or not a recognised parameter/algebra object."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# input handling

def _read_input(arg: str) -> object:
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith(("{", "[")):
        text = arg
    else:
        try:
            text = Path(arg).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None


def _guess_family(keys) -> str:
    only8 = set(FAMILIES["TLb8"].names) - set(FAMILIES["TLb7"].names)
    return "TLb8" if set(keys) & only8 else "TLb7"


def parse_params(obj, family: str | None = None):
    """Parameter vector from ``{"family":..., "c": {...}}``, a flat ``{"c01": ...}`` map or an algebra."""
    if not isinstance(obj, dict):
        raise ParseError("input must be a JSON object")
    if "dim" in obj:
        try:
            A = Algebra.from_json_obj(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc)) from None
        return extract_params(A, family)
    if "c" in obj:
        raw = obj["c"]
        fam = family or obj.get("family")
    else:
        raw = {k: v for k, v in obj.items() if k != "family"}
        fam = family or obj.get("family")
    if not isinstance(raw, dict):
        raise ParseError("'c' must be an object")
    try:
        fam = normalize_family(fam) if fam else _guess_family(raw)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"unknown family {fam!r}") from exc
    info = FAMILIES[fam]
    unknown = sorted(set(raw) - set(info.names))
    if unknown:
        raise ParseError(f"unknown parameters for {fam}: {unknown}")
    vals = {}
    for k, v in raw.items():
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise ParseError(f"{k}: values must be strings like \"1/2+3i\" or integers")
        try:
            vals[k] = as_gauss(str(v))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{k}: cannot parse {v!r} as a Gaussian rational") from exc
    return info.param_cls(**vals)


def _emit(obj, path: str | None):
    text = json.dumps(obj, sort_keys=True)
    print(text)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")


def _write_report(report, path: str | None):
    print(report.summary())
    if path:
        Path(path).write_text(report.to_jsonl(), encoding="utf-8")


def _allowlist(path: str | None) -> ErrataAllowlist:
    try:
        return ErrataAllowlist.load(path)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"cannot load errata allowlist: {exc}") from None


# ---------------------------------------------------------------------------
# commands

def cmd_classify(args) -> int:
    K = default_classifier(args.reading)
    C = parse_params(_read_input(args.input), _family_arg(args))
    try:
        label = K.classify(C)
    except (NoSubsetMatched, MultipleSubsetsMatched, DenominatorVanished) as exc:
        _emit({"family": C.family, "params": param_to_json(C)["c"], "error": type(exc).__name__,
               "detail": str(exc)}, args.json)
        return EXIT_FAIL
    out = label.to_json_obj()
    try:
        out["rep"] = str(K.canonical_rep(label))
    except (RequiresAlgebraicExtension, PatternNotInvertible) as exc:
        out["rep"] = None
        out["rep_note"] = str(exc)
    _emit(out, args.json)
    return EXIT_OK


def cmd_iso(args) -> int:
    K = default_classifier(args.reading)
    fam = _family_arg(args)
    C1 = parse_params(_read_input(args.input_a), fam)
    C2 = parse_params(_read_input(args.input_b), fam)
    if C1.family != C2.family:
        raise FamilyMismatch(f"{C1.family} vs {C2.family}")
    verdict = K.isomorphic(C1, C2)
    detail = {}
    for key, C in (("a", C1), ("b", C2)):
        try:
            detail[key] = K.classify(C).to_json_obj()
        except (NoSubsetMatched, MultipleSubsetsMatched, DenominatorVanished) as exc:
            detail[key] = {"error": type(exc).__name__, "detail": str(exc)}
    out = {"verdict": verdict.value, "detail": detail}
    if verdict is Verdict.YES:
        w = find_witness(C1, C2)
        if w.found:
            out["witness"] = w.transform.to_json_obj() if w.transform is not None else \
                {"matrix": [[str(x) for x in r] for r in w.matrix]}
        else:
            out["witness"] = w.status
            out["witness_detail"] = w.to_json_obj()
    _emit(out, args.json)
    return EXIT_OK


def cmd_verify_tables(args) -> int:
    tables = tuple(t.strip().upper() for t in args.tables.split(",")) if args.tables else tuple(TABLES)
    bad = [t for t in tables if t not in TABLES]
    if bad:
        raise ParseError(f"unknown tables {bad}; choose from {list(TABLES)}")
    if args.family:
        fam = normalize_family(args.family)
        tables = tuple(t for t in tables if TABLES[t][0] == fam)
    rep = verify_tables(seed=args.seed, samples=args.samples, transforms=args.transforms, tables=tables,
                        allowlist=_allowlist(args.errata_allowlist), reading=args.reading,
                        workers=args.workers)
    _write_report(rep, args.json)
    return rep.exit_code()


def cmd_fuzz(args) -> int:
    if args.samples < 1:
        raise ParseError("--samples must be at least 1")
    rep = partition_fuzz(normalize_family(args.family), samples=args.samples, seed=args.seed,
                         invariance_every=args.invariance_every,
                         allowlist=_allowlist(args.errata_allowlist), reading=args.reading,
                         admissible_only=args.admissible_only)
    _write_report(rep, args.json)
    return rep.exit_code()


def cmd_derive_constraints(args) -> int:
    rep = compare_with_lemma(normalize_family(args.family), args.variant)
    print(f"{rep.family} ({rep.variant}): {len(rep.constraints)} derived constraints")
    for p in rep.constraints:
        print(f"  {p} = 0")
    print("lemma items:")
    for lab, rel, status in rep.items:
        print(f"  {lab:>3}  {str(rel) + ' = 0':<28} {status}")
    for p in rep.extra:
        print(f"  extra: {p} = 0")
    print(f"matched {rep.matched}, missing {rep.missing}, extra {len(rep.extra)}; "
          f"independent linear relations: {rep.independent_linear} (lemma: {rep.lemma_linear})")
    if args.json:
        Path(args.json).write_text(json.dumps(rep.to_json_obj(), sort_keys=True) + "\n", encoding="utf-8")
    return EXIT_OK if rep.same_variety() else EXIT_FAIL


def _family_arg(args):
    return normalize_family(args.family) if args.family else None


# ---------------------------------------------------------------------------

def _family_type(text: str) -> str:
    try:
        return normalize_family(text)
    except (KeyError, ValueError):
        raise argparse.ArgumentTypeError(f"unknown family {text!r} (use tlb7 or tlb8)") from None


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the machine-readable report here")
    common.add_argument("--reading", choices=READINGS, default="active",
                        help="which variant of the ambiguous table rows to use")

    p = _Parser(prog="flc", description="Exact classification and verification for TLb7/TLb8.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="subset, invariants and representative")
    c.add_argument("input", help="JSON file, inline JSON, or - for stdin")
    c.add_argument("--family", type=_family_type)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("iso", parents=[common], help="isomorphism verdict and witness")
    c.add_argument("input_a")
    c.add_argument("input_b")
    c.add_argument("--family", type=_family_type)
    c.set_defaults(func=cmd_iso)

    c = sub.add_parser("verify-tables", parents=[common], help="check every table row")
    c.add_argument("--family", type=_family_type)
    c.add_argument("--seed", type=_u64, default=0)
    c.add_argument("--samples", type=int, default=50, help="instances per parametric row")
    c.add_argument("--transforms", type=int, default=50, help="transforms per instance")
    c.add_argument("--tables", help="comma separated subset of T1,T2,T3,T4")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--errata-allowlist", metavar="PATH")
    c.set_defaults(func=cmd_verify_tables)

    c = sub.add_parser("fuzz", parents=[common], help="partition and invariance fuzzing")
    c.add_argument("--family", type=_family_type, required=True)
    c.add_argument("--seed", type=_u64, default=0)
    c.add_argument("--samples", type=int, default=10_000)
    c.add_argument("--invariance-every", type=int, default=10, metavar="M",
                   help="also transform every M-th sample (0 disables)")
    c.add_argument("--admissible-only", action="store_true")
    c.add_argument("--errata-allowlist", metavar="PATH")
    c.set_defaults(func=cmd_fuzz)

    c = sub.add_parser("derive-constraints", parents=[common], help="Leibniz constraints vs the lemma items")
    c.add_argument("--family", type=_family_type, required=True)
    c.add_argument("--variant", choices=VARIANTS, default="corrected")
    c.set_defaults(func=cmd_derive_constraints)
    return p


def _check_data(reading: str):
    data = load_classification()
    _build_records(data, reading)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        _check_data(args.reading)
    except (ClassificationDataError, json.JSONDecodeError) as exc:
        print(f"flc: classification data is invalid: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"flc: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TemplateMismatch, FamilyMismatch) as exc:
        print(f"flc: {type(exc).__name__}: {exc}", file=sys.stderr)
        for e in getattr(exc, "entries", [])[:10]:
            i, j, k, got, want = e
            print(f"  [e{i}, e{j}] coefficient of e{k}: got {got}, template {want}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
