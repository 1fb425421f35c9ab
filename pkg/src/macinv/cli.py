"""Command-line entry point: ``macinv <subcommand> ...``.

Exit codes: 0 success / proven / admissible, 1 negative verdict, 2 unknown,
3 usage or parse error, 4 construction fault.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction

from macinv.apolar import ParseError, Poly, format_monomial, format_poly, parse_poly

OK, NEGATIVE, UNKNOWN, USAGE, FAULT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def poly_json(p: Poly) -> list[dict]:
    return [{"mono": list(m), "coeff": str(Fraction(c))} for m, c in p.sorted_terms()]


def _emit(obj, args, text_lines):
    if getattr(args, "json", False):
        print(json.dumps(obj, indent=2))
    else:
        for line in text_lines:
            print(line)


def _seq(text: str):
    from macinv.oseq import parse_sequence
    return parse_sequence(text)


def _polys(texts):
    polys = [parse_poly(t) for t in texts]
    n = max(p.nvars for p in polys)
    return [p.lift(n) for p in polys]


def cmd_hf(args):
    from macinv.invsys import InverseSystem, local_hilbert_function
    gens = _polys(args.f)
    sys_ = InverseSystem(gens)
    h = local_hilbert_function(sys_)
    _emit({"generators": [poly_json(g) for g in sys_.generators], "hilbert": list(h),
           "length": sys_.dim}, args, [",".join(map(str, h))])
    return OK


def cmd_qdecomp(args):
    from macinv.qdecomp import q_decomposition
    q = q_decomposition(_polys(args.f))
    sym = q.symmetric_rows()
    lines = ["h = " + ",".join(map(str, q.hilbert))]
    for a, row in enumerate(q.q_hf):
        lines.append(f"Q({a}) = {','.join(map(str, row))}  {'symmetric' if sym[a] else 'NOT symmetric'}")
    _emit({"hilbert": list(q.hilbert), "s": q.s,
           "q": [{"a": a, "hilbert": list(row), "symmetric": sym[a]} for a, row in enumerate(q.q_hf)]},
          args, lines)
    return OK if all(sym) else NEGATIVE


def _verdict_code(v):
    if v.admissible is None:
        return UNKNOWN
    return OK if v.admissible else NEGATIVE


def _classify(h, gorenstein: bool):
    from macinv import oseq
    if gorenstein:
        if len(h) == 5 and h[1] == 3:
            return oseq.classify_gorenstein_h1_3_s4(h)
        if len(h) == 5:
            return oseq.classify_gorenstein_s4_unimodal(h)
        return oseq.gorenstein_necessary(h)
    return oseq.classify_level_h1_3_s4(h)


def cmd_classify(args):
    gor = args.gorenstein is not None
    h = _seq(args.gorenstein if gor else args.level)
    v = _classify(h, gor)
    _emit({"h": list(h), "kind": "gorenstein" if gor else "level", **v.as_dict()},
          args, [v.message])
    return _verdict_code(v)


def cmd_construct(args):
    from macinv.construct import construct
    h = _seq(args.h)
    gor = len(h) == 5 and h[4] == 1
    v = _classify(h, gor)
    if not v.admissible:
        print(v.message, file=sys.stderr)
        return _verdict_code(v)
    r = construct(h)
    _emit({"h": list(h), "case_path": r.case_path, "generators": [poly_json(g) for g in r.generators]},
          args, [f"# {r.case_path}"] + [format_poly(g) for g in r.generators])
    return OK


def cmd_tables(args):
    from macinv.oseq import tables_report
    t1, t2 = tables_report(args.data)
    if args.json:
        print(json.dumps({"table1": [list(h) for h in t1], "table2": [list(h) for h in t2]}, indent=2))
        return OK
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["table", "h0", "h1", "h2", "h3", "h4"])
    for name, rows in (("1", t1), ("2", t2)):
        for h in rows:
            w.writerow([name, *h])
    return OK


def cmd_witness(args):
    from macinv.construct import stanley_witness, witness_F, witness_G
    if args.stanley:
        F, G = stanley_witness()
    else:
        if args.n is None or args.m is None:
            raise UsageError("witness needs --n and --m, or --stanley")
        F, G = witness_F(args.n, args.m), witness_G(args.n, args.m)
    _emit({"F": poly_json(F), "G": poly_json(G), "nvars": F.nvars},
          args, [f"F = {format_poly(F)}", f"G = {format_poly(G)}"])
    return OK


def cmd_verify_ncg(args):
    from macinv.gradcheck import Status, verify_not_canonically_graded, verify_stanley
    if args.stanley:
        out = verify_stanley()
    else:
        if args.n is None or args.m is None:
            raise UsageError("verify-ncg needs --n and --m, or --stanley")
        out = verify_not_canonically_graded(args.n, args.m)
    for line in out.transcript:
        print(line, file=sys.stderr)
    order = " ".join(f"u{j + 1}" for j, _, _ in out.forced_order)
    lines = [out.status.value] + ([out.note] if out.note else []) + ([f"forced: {order}"] if order else [])
    _emit(out.as_dict(), args, lines)
    return {Status.PROVEN: OK, Status.REFUSED: NEGATIVE, Status.UNKNOWN: UNKNOWN}[out.status]


def cmd_betti(args):
    from macinv.oseq import ek_betti, lex_ideal, min_last_betti_lower_bound
    h = _seq(args.h)
    gens = lex_ideal(h, args.vars)
    B = ek_betti(gens, args.vars)
    bound = min_last_betti_lower_bound(B, args.vars)
    rows = B.as_rows()
    lines = ["generators: " + ", ".join(format_monomial(g) for g in gens)]
    for i, row in rows.items():
        if i:
            lines.append(f"beta_{i}: " + ", ".join(f"{j}:{c}" for j, c in row.items()))
    lines.append(f"last Betti number after cancellations >= {bound}")
    _emit({"h": list(h), "vars": args.vars, "generators": [list(g) for g in gens],
           "betti": {str(i): {str(j): c for j, c in row.items()} for i, row in rows.items() if i},
           "last_betti_lower_bound": bound}, args, lines)
    return OK


def cmd_enumerate(args):
    from macinv.oseq import classify_gorenstein_s4_unimodal, classify_level_h1_3_s4, enumerate_o_sequences
    keep = None
    if args.admissible:
        if args.s != 4:
            raise UsageError("--admissible is available for s = 4 only")
        if args.last_max == 1:
            keep = lambda h: classify_gorenstein_s4_unimodal(h).admissible is True
        elif args.h1 == 3 and args.last_min >= 2:
            keep = lambda h: classify_level_h1_3_s4(h).admissible
        else:
            raise UsageError("--admissible needs --last-max 1, or --h1 3 with --last-min >= 2")
    seqs = enumerate_o_sequences(args.s, args.h1, args.last_min, args.last_max, keep)
    if args.json:
        print(json.dumps({"count": len(seqs), "sequences": [list(h) for h in seqs]}, indent=2))
    else:
        for h in seqs:
            print(h)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="macinv", description="Inverse systems of local Artinian algebras.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("hf", cmd_hf, "local Hilbert function of the inverse system")
    sp.add_argument("-f", action="append", required=True, metavar="POLY")
    sp.add_argument("--json", action="store_true")

    sp = add("qdecomp", cmd_qdecomp, "Q-decomposition of the associated graded ring")
    sp.add_argument("-f", action="append", required=True, metavar="POLY")
    sp.add_argument("--json", action="store_true")

    sp = add("classify", cmd_classify, "admissibility verdict for an O-sequence")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--level", metavar="H")
    g.add_argument("--gorenstein", metavar="H")
    sp.add_argument("--json", action="store_true")

    sp = add("construct", cmd_construct, "explicit generators realizing h")
    sp.add_argument("h", metavar="H")
    sp.add_argument("--json", action="store_true")

    sp = add("tables", cmd_tables, "local-only level and Gorenstein sequences, h1 = 3, s = 4")
    sp.add_argument("--data", help="graded level list (default: packaged file or $APOLAR_GRADED_DATA)")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true", help="CSV output (the default)")
    fmt.add_argument("--json", action="store_true")

    sp = add("witness", cmd_witness, "the forms F and G = F + x_n^3")
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--stanley", action="store_true")
    sp.add_argument("--json", action="store_true")

    sp = add("verify-ncg", cmd_verify_ncg, "certify that A_G is not canonically graded")
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--stanley", action="store_true")
    sp.add_argument("--json", action="store_true")

    sp = add("betti", cmd_betti, "lex ideal and its Eliahou-Kervaire Betti table")
    sp.add_argument("--h", required=True)
    sp.add_argument("--vars", type=int, required=True)
    sp.add_argument("--json", action="store_true")

    sp = add("enumerate", cmd_enumerate, "list O-sequences (1, h1, ..., h_s)")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--h1", type=int, required=True)
    sp.add_argument("--last-min", type=int, default=1)
    sp.add_argument("--last-max", type=int)
    sp.add_argument("--admissible", action="store_true", help="keep only classified-admissible sequences")
    sp.add_argument("--json", action="store_true")
    return p


def run(argv=None) -> int:
    from macinv.construct import ConstructionFault
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ConstructionFault as exc:
        print(f"construction fault: {exc}", file=sys.stderr)
        return FAULT
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except (UsageError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return FAULT


def main():
    sys.exit(run())
