"""Command-line front end.

Exit codes: 0 success or pass, 1 counterexample or violation, 2 usage or
resource error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import constructions as cons
from .bch import build_columns, certify_strength
from .errors import DomainError, GraphCodeError, IntegrityError, ResourceError
from .families import copy_masks, enumerate_copies
from .graph import LabeledGraph
from .search import DEFAULT_TIME_LIMIT, even_clique_witness, max_code_exact, min_codim_exact
from .serialize import (
    certificate_from_json,
    certificate_to_json,
    columnset_from_json,
    code_from_json,
    code_to_json,
    columnset_to_json,
    graph_from_json,
    graph_to_json,
    graphs_from_json,
    parse_family,
    read_json,
    report_to_json,
    result_to_json,
    witness_to_json,
    write_json,
)
from .verification import EXHAUSTIVE, Sampled, verify_code, verify_odd_cover

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

NAMED_HPRIME = {
    "edge": LabeledGraph.from_edges(2, [(0, 1)]),
    "path": LabeledGraph.from_edges(3, [(0, 1), (1, 2)]),
    "triangle": LabeledGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)]),
}


class UsageError(GraphCodeError):
    pass


def _rate_text(codim: int) -> str:
    return f"2^-{codim} ({float(Fraction(1, 1 << codim)):.10g})"


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--kind {args.kind} requires {', '.join(missing)}")


def _build(args: argparse.Namespace):
    kind = args.kind
    if kind == "star":
        _need(args, "n", "k")
        return cons.star_code(args.n, args.k)
    if kind == "matching":
        _need(args, "n", "k")
        return cons.matching_code(args.n, args.k)
    if kind == "small-clique":
        _need(args, "n", "r")
        return cons.small_clique_code(args.n, args.r)
    if kind == "clique-linear":
        _need(args, "n")
        return cons.clique_linear_code(args.n)
    if kind == "even-parity":
        _need(args, "n")
        return cons.even_parity_code(args.n)
    _need(args, "n", "hprime", "indep")
    if args.hprime in NAMED_HPRIME:
        hprime = NAMED_HPRIME[args.hprime]
    else:
        hprime = graph_from_json(read_json(args.hprime))
    indep = [int(v) for v in args.indep.split(",") if v.strip()] if args.indep else []
    return cons.doubled_clique_certificate(hprime, indep, args.n)


def cmd_construct(args: argparse.Namespace) -> int:
    built = _build(args)
    out = Path(args.out or f"{args.kind}-n{args.n}.json")
    if isinstance(built, cons.CliqueCertificate):
        write_json(certificate_to_json(built), out)
        print(f"n={built.n} m={built.m} bound=1/{built.m} vertex_bound={built.vertex_bound} -> {out}")
        return EXIT_OK
    write_json(code_to_json(built), out)
    print(f"n={built.n} codim={built.codim} size=2^{built.dimension} "
          f"rate={_rate_text(built.codim)} -> {out}")
    return EXIT_OK


def _mode(args: argparse.Namespace):
    if args.mode == "exhaustive":
        return EXHAUSTIVE
    return Sampled(args.seed, args.samples)


def cmd_verify(args: argparse.Namespace) -> int:
    code = code_from_json(read_json(args.code))
    fam = parse_family(args.family)
    report = verify_code(code, fam, _mode(args), workers=args.threads)
    if args.report:
        write_json(report_to_json(report), args.report)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status} family={report.family} copies_checked={report.copies_checked} "
          f"violations={report.violation_count}")
    if not report.passed:
        first = report.violations[0].copy
        print(f"first violating copy: {first.edges()}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_odd_cover(args: argparse.Namespace) -> int:
    obj = read_json(args.coloring)
    n = obj["n"]
    fam = parse_family(args.family)
    report = verify_odd_cover(obj["colors"], fam, n, _mode(args), workers=args.threads)
    if args.report:
        write_json(report_to_json(report), args.report)
    print(f"{'PASS' if report.passed else 'FAIL'} family={report.family} "
          f"copies_checked={report.copies_checked} violations={report.violation_count}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_exact_max(args: argparse.Namespace) -> int:
    fam = parse_family(args.family)
    res = max_code_exact(args.n, fam, args.time_limit)
    if args.out:
        write_json(result_to_json(res, fam), args.out)
    print(f"D={res.value} d={res.value}/2^{args.n * (args.n - 1) // 2} status={res.status} "
          f"nodes={res.nodes} elapsed={res.elapsed:.2f}s")
    if args.dump:
        for g in res.witness.members:
            print(g.edges())
    return EXIT_OK


def cmd_exact_min_codim(args: argparse.Namespace) -> int:
    fam = parse_family(args.family)
    res = min_codim_exact(args.n, fam)
    if args.out:
        write_json(result_to_json(res, fam), args.out)
    print(f"codim={res.value} status={res.status} subspaces={res.nodes} elapsed={res.elapsed:.2f}s")
    if args.dump:
        for row in res.witness.parity.rows:
            print(LabeledGraph(args.n, row).edges())
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    graphs = graphs_from_json(read_json(args.graphs))
    w = even_clique_witness(graphs, args.n)
    if args.out:
        write_json(witness_to_json(w, args.n), args.out)
    if w is None:
        print(f"no even clique witness for {len(graphs)} graphs on n={args.n}")
        return EXIT_FAIL
    print(f"subset={list(w.subset)} parities={list(w.parities)}")
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    fam = parse_family(args.family)
    if args.out:
        write_json({"family": fam.descriptor(), "n": args.n,
                    "copies": [graph_to_json(g) for g in enumerate_copies(fam, args.n)]}, args.out)
    count = len(copy_masks(fam, args.n))
    print(f"family={fam.descriptor()} n={args.n} copies={count}")
    return EXIT_OK


def cmd_columns(args: argparse.Namespace) -> int:
    cs = build_columns(args.s, args.t, args.augmented)
    try:
        report = certify_strength(cs, seed=args.seed)
    except IntegrityError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        write_json(columnset_to_json(cs, report), args.out)
    print(f"s={cs.s} t={cs.t} augmented={cs.parity_augmented} columns={len(cs)} rows={cs.width} "
          f"certified={report.method} strength={report.max_size} subsets={report.subsets_checked}")
    return EXIT_OK


def _check_family(text):
    try:
        return parse_family(text)
    except DomainError:
        return None  # iso/explicit descriptors name no file


def cmd_check(args: argparse.Namespace) -> int:
    """Re-read any file this CLI writes and re-validate what it claims."""
    if str(args.file).endswith(".csv"):
        with open(args.file, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            print("FAIL ragged or empty CSV")
            return EXIT_FAIL
        print(f"table columns={','.join(rows[0])} rows={len(rows) - 1}")
        return EXIT_OK
    obj = read_json(args.file)
    if not isinstance(obj, dict):
        graphs = graphs_from_json(obj)
        print(f"graphs={len(graphs)}")
        return EXIT_OK
    if "hprime" in obj:
        cert = certificate_from_json(obj)
        print(f"certificate OK n={cert.n} m={cert.m} bound=1/{cert.m}")
        return EXIT_OK
    if "columns" in obj:
        cs = columnset_from_json(obj)
        try:
            report = certify_strength(cs, seed=obj.get("certification", {}).get("seed", 0))
        except IntegrityError as exc:
            print(f"FAIL {exc}")
            return EXIT_FAIL
        print(f"columns OK s={cs.s} t={cs.t} strength={report.max_size} method={report.method}")
        return EXIT_OK
    if "witness" in obj:
        code = code_from_json(obj["witness"])
        fam = _check_family(obj.get("family", ""))
        # min-codim results store the co-dimension, max results the member count
        expected = code.codim if isinstance(code, cons.LinearGraphCode) else len(code.members)
        if obj.get("value") != expected:
            print(f"FAIL stored value {obj.get('value')} does not match the witness")
            return EXIT_FAIL
        if fam is not None and not verify_code(code, fam).passed:
            print(f"FAIL witness is not a code for {fam.descriptor()}")
            return EXIT_FAIL
        print(f"result OK value={obj['value']} status={obj.get('status')}")
        return EXIT_OK
    if "passed" in obj and "copies_checked" in obj:
        for v in obj.get("violations", []):
            graph_from_json(v["copy"])
        print(f"report {'PASS' if obj['passed'] else 'FAIL'} family={obj['family']} "
              f"violations={obj['violation_count']}")
        return EXIT_OK
    if "found" in obj:
        print(f"witness found={obj['found']} subset={obj.get('subset')}")
        return EXIT_OK
    if "type" in obj:
        code = code_from_json(obj)
        if isinstance(code, cons.LinearGraphCode):
            print(f"linear code n={code.n} codim={code.codim} rate={_rate_text(code.codim)}")
        else:
            print(f"explicit code n={code.n} members={len(code.members)}")
        return EXIT_OK
    graphs = graphs_from_json(obj)
    print(f"graphs={len(graphs)}")
    return EXIT_OK


RATE_COLUMNS = ["n", "construction", "codim", "rate", "rate_decimal", "bound_form"]


def rate_rows(n_min: int, n_max: int) -> list[list[str]]:
    rows = []
    for n in range(n_min, n_max + 1):
        candidates = []
        for k in (1, 2):
            if n >= 2 * k + 1:
                candidates.append((f"star k={k}", cons.star_code(n, k), f"Theta(n^-{k}) vs K_1,{2 * k}"))
            if n >= 4 * k:
                candidates.append((f"matching k={k}", cons.matching_code(n, k), f"Theta(n^-{k}) vs M_{2 * k}"))
        if n >= 2:
            candidates.append(("small-clique r=1", cons.small_clique_code(n, 1), "Omega(n^-1) vs K(7)"))
            candidates.append(("clique-linear", cons.clique_linear_code(n), "2^-floor(n/2), optimal linear"))
        candidates.append(("even-parity", cons.even_parity_code(n), "1/2 vs odd-edge families"))
        for name, code, bound in candidates:
            rate = Fraction(1, 1 << code.codim)
            rows.append([str(n), name, str(code.codim), f"2^-{code.codim}", f"{float(rate):.10g}", bound])
    return rows


def cmd_report_rates(args: argparse.Namespace) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RATE_COLUMNS)
    writer.writerows(rate_rows(args.n_min, args.n_max))
    text = buf.getvalue()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_report_exact(args: argparse.Namespace) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "family", "D", "d", "d_decimal", "status"])
    for n in range(args.n_min, args.n_max + 1):
        for text in args.families.split(","):
            fam = parse_family(text)
            res = max_code_exact(n, fam, args.time_limit)
            d = Fraction(res.value, 1 << (n * (n - 1) // 2))
            writer.writerow([n, fam.descriptor(), res.value, str(d), f"{float(d):.10g}", res.status])
    text = buf.getvalue()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphcodes", description="Build and check graph codes.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_mode(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=_positive, default=100_000)
        sp.add_argument("--threads", type=_positive, default=1, help="worker processes")
        sp.add_argument("--report", help="write the report JSON here")

    c = sub.add_parser("construct", help="build a code or clique certificate")
    c.add_argument("--kind", required=True, choices=[
        "star", "matching", "small-clique", "clique-linear", "even-parity", "doubled-certificate"])
    c.add_argument("--n", type=_positive)
    c.add_argument("--k", type=_positive)
    c.add_argument("--r", type=_positive)
    c.add_argument("--hprime", help="graph JSON file, or one of: edge, path, triangle")
    c.add_argument("--indep", help="comma-separated independent vertices of H'")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a code file against a forbidden family")
    v.add_argument("--code", required=True)
    v.add_argument("--family", required=True)
    add_mode(v)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("odd-cover", help="check an edge colouring is an odd cover")
    o.add_argument("--coloring", required=True, help='JSON {"n": .., "colors": [one per edge index]}')
    o.add_argument("--family", required=True)
    add_mode(o)
    o.set_defaults(func=cmd_odd_cover)

    e = sub.add_parser("exact", help="exact desk-scale searches")
    esub = e.add_subparsers(dest="exact_command", required=True)
    em = esub.add_parser("max", help="maximum code size D_H(n)")
    em.add_argument("--n", type=_positive, required=True)
    em.add_argument("--family", required=True)
    em.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    em.add_argument("--out")
    em.add_argument("--dump", action="store_true", help="print the witness code")
    em.set_defaults(func=cmd_exact_max)
    ec = esub.add_parser("min-codim", help="minimum co-dimension of a linear code")
    ec.add_argument("--n", type=_positive, required=True)
    ec.add_argument("--family", required=True)
    ec.add_argument("--out")
    ec.add_argument("--dump", action="store_true")
    ec.set_defaults(func=cmd_exact_min_codim)

    w = sub.add_parser("witness", help="Chevalley-Warning witnesses")
    wsub = w.add_subparsers(dest="witness_command", required=True)
    wc = wsub.add_parser("even-clique")
    wc.add_argument("--n", type=_positive, required=True)
    wc.add_argument("--graphs", required=True, help="JSON graph or list of graphs")
    wc.add_argument("--out")
    wc.set_defaults(func=cmd_witness)

    en = sub.add_parser("enumerate", help="list copies of a family in K_n")
    en.add_argument("--family", required=True)
    en.add_argument("--n", type=_positive, required=True)
    en.add_argument("--out")
    en.set_defaults(func=cmd_enumerate)

    cb = sub.add_parser("columns", help="build and certify BCH parity-check columns")
    cb.add_argument("--s", type=int, required=True)
    cb.add_argument("--t", type=_positive, required=True)
    cb.add_argument("--augmented", action="store_true")
    cb.add_argument("--seed", type=int, default=0)
    cb.add_argument("--out")
    cb.set_defaults(func=cmd_columns)

    ck = sub.add_parser("check", help="re-read and re-validate a file written by this tool")
    ck.add_argument("file")
    ck.set_defaults(func=cmd_check)

    r = sub.add_parser("report", help="CSV tables")
    rsub = r.add_subparsers(dest="report_command", required=True)
    rr = rsub.add_parser("rates", help="co-dimension and rate of each construction")
    rr.add_argument("--n-min", type=_positive, default=2)
    rr.add_argument("--n-max", type=_positive, default=16)
    rr.add_argument("--out")
    rr.set_defaults(func=cmd_report_rates)
    rx = rsub.add_parser("exact", help="exact D_H(n) and d_H(n)")
    rx.add_argument("--n-min", type=_positive, default=2)
    rx.add_argument("--n-max", type=_positive, default=4)
    rx.add_argument("--families", default="star:2,matching:2,cliques")
    rx.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    rx.add_argument("--out")
    rx.set_defaults(func=cmd_report_exact)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, ResourceError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrityError as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
