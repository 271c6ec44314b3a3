"""Command-line entry point: ``soergelring <command> ...``.

Exit codes: 0 verified / success, 1 verification failure (a JSON witness is
printed on stdout), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import random
import sys
import time

from .coxeter import CoxeterGroup, GroupMismatchError, group_from_name
from .grammar import ParseError, evaluate, parse_expression, parse_set
from .grotring import EXTENDED, PLAIN, GrothendieckRing, InvalidClass, Letter, RingElement, enumerate_X
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _group(name: str) -> CoxeterGroup:
    try:
        return group_from_name(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _finish_reports(reports: list[Report], fmt: str) -> int:
    ok = all(r.ok for r in reports)
    if fmt == "json":
        _emit(_dump({"ok": ok, "reports": [r.to_json() for r in reports]}))
    else:
        for r in reports:
            _emit(r.text())
        if not ok:
            witness = [
                {"report": r.title, "check": c.name, "detail": c.detail}
                for r in reports
                for c in r.checks
                if not c.ok
            ]
            _emit(json.dumps({"witness": witness}))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# grot


def _ring(args) -> GrothendieckRing:
    return GrothendieckRing(args.variant)


def cmd_grot_mul(args) -> int:
    R = _ring(args)
    out = R.unit
    for text in args.expr:
        out = R.product(out, evaluate(R, parse_expression(R.group, text)))
    if args.format == "json":
        _emit(_dump(R.element_json(out)))
    else:
        _emit(R.format_element(out) or "0")
    return EXIT_OK


def table_rows(R: GrothendieckRing):
    """(A, B, C, coefficient) for every basis triple, in basis order."""
    g = R.group
    sc = R.structure_constants()
    for i, j, k in itertools.product(range(R.rank), repeat=3):
        yield g.set_str(R.basis[i]), g.set_str(R.basis[j]), g.set_str(R.basis[k]), sc[i][j][k]


def table_csv(R: GrothendieckRing) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["left", "right", "result", "coeff"])
    for a, b, c, coeff in table_rows(R):
        w.writerow([a, b, c, str(coeff)])
    return buf.getvalue()


def _latex_set(text: str) -> str:
    return text.replace("{", "\\{").replace("}", "\\}")


def table_latex(R: GrothendieckRing) -> str:
    g = R.group
    lines = ["\\begin{longtable}{lll}", "$A$ & $B$ & $[R(A)][R(B)]$ \\\\", "\\hline"]
    for i, A in enumerate(R.basis):
        for j, B in enumerate(R.basis):
            prod = R.table[i][j]
            body = " + ".join(
                f"({c})R({_latex_set(g.set_str(C))})" if c.needs_parens() or str(c) != "1" else f"R({_latex_set(g.set_str(C))})"
                for C, c in prod.items()
            ) or "0"
            row = f"${_latex_set(g.set_str(A))}$ & ${_latex_set(g.set_str(B))}$ & ${body}$ \\\\"
            lines.append(row.replace("^-1", "^{-1}").replace("*", ""))
    lines.append("\\end{longtable}")
    return "\n".join(lines)


def cmd_grot_table(args) -> int:
    R = _ring(args)
    g = R.group
    if args.format == "csv":
        _emit(table_csv(R))
    elif args.format == "json":
        rows = [
            {"left": g.set_str(A), "right": g.set_str(B), "product": R.element_json(R.table[i][j])}
            for i, A in enumerate(R.basis)
            for j, B in enumerate(R.basis)
        ]
        _emit(_dump({"variant": R.variant, "basis": [g.set_str(A) for A in R.basis], "table": rows}))
    elif args.format == "latex":
        _emit(table_latex(R))
    else:
        for i, A in enumerate(R.basis):
            for j, B in enumerate(R.basis):
                _emit(f"R{g.set_str(A)} * R{g.set_str(B)} = {R.format_element(R.table[i][j]) or '0'}")
    return EXIT_OK


def basis_report(R: GrothendieckRing) -> Report:
    rep = Report(f"basis of the {R.variant} ring")
    X = enumerate_X(R.group)
    rep.add("|X| = 19", len(X) == 19, str(len(X)))
    want = 20 if R.variant == PLAIN else 25
    rep.add(f"rank {want}", R.rank == want, str(R.rank))
    g, Xs = R.group, set(X)
    rep.add("X closed under inversion", all(g.invert_set(A) in Xs for A in X))
    # the complement of W is empty, which is not a class
    rep.add("X closed under complement (A != W)", all(g.complement(A) in Xs for A in X if A != g.full))
    return rep


def associativity_report(R: GrothendieckRing, samples: int = 1000, seed: int = 0) -> Report:
    """Exhaustive over basis triples via the table, plus random triples
    recomputed through generator expansions."""
    rep = Report(f"associativity in the {R.variant} ring")
    b = [RingElement.basis(A) for A in R.basis]
    fp = R.fast_product
    bad = next(
        ((x, y, z) for x, y, z in itertools.product(b, repeat=3) if fp(fp(x, y), z) != fp(x, fp(y, z))),
        None,
    )
    detail = f"{R.rank ** 3} triples" if bad is None else "fails at " + ", ".join(R.format_element(t) for t in bad)
    rep.add("all basis triples", bad is None, detail)
    rng = random.Random(seed)
    bad = None
    for _ in range(samples):
        x, y, z = (b[rng.randrange(R.rank)] for _ in range(3))
        if R.product(R.product(x, y), z) != R.product(x, R.product(y, z)):
            bad = (x, y, z)
            break
    detail = f"{samples} triples, seed {seed}" if bad is None else "fails at " + ", ".join(R.format_element(t) for t in bad)
    rep.add("random triples through generator expansions", bad is None, detail)
    return rep


def cmd_grot_verify(args) -> int:
    R = _ring(args)
    reports = [basis_report(R), R.verify_relations(), associativity_report(R, args.samples, args.seed)]
    return _finish_reports(reports, args.format)


# ---------------------------------------------------------------------------
# alg


def cmd_alg_normalize(args) -> int:
    from .presented import normalize, parse_word

    try:
        w = parse_word(args.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = normalize(w)
    if args.format == "json":
        from .presented import word_str

        _emit(_dump([{"word": word_str(u), "coeff": c.to_json()} for u, c in out.items()]))
    else:
        _emit(str(out) or "0")
    return EXIT_OK


def cmd_alg_verify_iso(args) -> int:
    from .presented import Presentation

    rep = Presentation().verify_iso(args.max_len)
    if args.format != "json":
        _emit(f"determinant: {rep.data['determinant']}")
    return _finish_reports([rep], args.format)


# ---------------------------------------------------------------------------
# char


def cmd_char_word(args) -> int:
    from .characters import uch_of_word
    from .grammar import SetFactor

    g = _group(args.group)
    terms = parse_expression(g, args.expr)
    if len(terms) != 1 or terms[0].coeff != 1 or any(isinstance(f, SetFactor) for f in terms[0].factors):
        raise UsageError("char word expects a single product of B:x and Rw:x factors")
    letters: list[Letter] = terms[0].factors
    ch = uch_of_word(g, letters)
    if args.format == "json":
        _emit(_dump(ch.to_json()))
    else:
        _emit(str(ch))
    return EXIT_OK


# ---------------------------------------------------------------------------
# hilbert


def hilbert_rows(g: CoxeterGroup, sets: list[int], maxdeg: int):
    from .hilbert import HilbertOracle

    oracle = HilbertOracle(g)
    for A in sets:
        for k in range(maxdeg + 1):
            yield g.set_str(A), k, oracle.hilbert_function(A, k)


def hilbert_csv(g: CoxeterGroup, sets: list[int], maxdeg: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["set", "k", "dim"])
    for row in hilbert_rows(g, sets, maxdeg):
        w.writerow(row)
    return buf.getvalue()


def _sets_arg(g: CoxeterGroup, specs: list[str]) -> list[int]:
    out = []
    for spec in specs:
        if spec == "X":
            out.extend(enumerate_X(g))
        else:
            out.append(parse_set(g, spec))
    return out


def cmd_hilbert(args) -> int:
    g = _group(args.group)
    sets = _sets_arg(g, args.set or ["W"])
    try:
        rows = list(hilbert_rows(g, sets, args.maxdeg))
    except NotImplementedError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "csv":
        _emit(hilbert_csv(g, sets, args.maxdeg))
    elif args.format == "json":
        out: dict = {}
        for name, k, d in rows:
            out.setdefault(name, []).append(d)
        _emit(_dump({"group": g.desc.name, "degree": "polynomial (internal = 2k)", "dims": out}))
    else:
        for name, k, d in rows:
            _emit(f"{name}\tk={k}\t{d}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# explore


def cmd_explore(args) -> int:
    from . import explorer

    if args.what == "b2-counterexample":
        rep = explorer.b2_counterexample(args.maxdeg, args.shift_window)
    elif args.what == "a3-checks":
        rep = explorer.a3_checks()
    elif args.what == "remark-comb":
        rep = explorer.remark_comb_check(args.max_k, args.shift_window)
    else:
        g = _group(args.group or ("a3" if args.generators else "a2"))
        if args.generators:
            gens = []
            for item in args.generators.split(","):
                item = item.strip()
                if item.startswith("B:"):
                    item = item[2:]
                try:
                    gens.append(g.parse_element(item))
                except ValueError as exc:
                    raise UsageError(str(exc)) from exc
        else:
            gens = list(g.reflections)
        try:
            st = explorer.closure_explore(g, gens, args.budget)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        rep = explorer.closure_report(st)
        if args.format != "json":
            d = rep.data
            _emit(f"reached {d['reached_count']} classes, {d['opaque_count']} opaque products, {d['steps']} steps")
            for steps, reached, opaque in st.growth:
                _emit(f"  after {steps} steps: {reached} reached, {opaque} opaque")
    return _finish_reports([rep], args.format)


# ---------------------------------------------------------------------------
# verify-all


def verify_all_reports(group: str, seed: int = 0) -> list[Report]:
    from . import explorer
    from .hilbert import HilbertOracle, check_soergel_lemma, expansion_series

    reports: list[Report] = []
    if group in ("a2", "all"):
        from .presented import Presentation

        plain, ext = GrothendieckRing(PLAIN), GrothendieckRing(EXTENDED)
        for R in (plain, ext):
            reports += [basis_report(R), R.verify_relations(), associativity_report(R, 1000, seed)]
        reports.append(Presentation(plain).verify_iso(8))
        g = plain.group
        oracle = HilbertOracle(g)
        lemma = Report("decomposition lemmas vs Hilbert oracle (A2, D = 10)")
        for A in plain.X:
            for t in g.reflections:
                sub = check_soergel_lemma(oracle, A, t, 10)
                if sub.ok or "not applicable" not in sub.checks[0].detail:
                    lemma.add(f"A={g.set_str(A)} t={g.word_str(t)}", sub.ok, sub.checks[-1].detail)
        reports.append(lemma)
        series = Report("generator expansions vs Hilbert oracle (A2, k <= 6)")
        for A in plain.X:
            pred = expansion_series(plain, A, 6)
            got = oracle.series(A, 6)
            series.add(f"A={g.set_str(A)}", pred == got, f"{got}" if pred == got else f"oracle {got}, expansion {pred}")
        reports.append(series)
        reports.append(explorer.remark_comb_check(ring=ext))
    if group in ("b2", "all"):
        reports.append(explorer.b2_counterexample())
    if group in ("a3", "all"):
        reports.append(explorer.a3_checks())
    return reports


def cmd_verify_all(args) -> int:
    if args.group not in ("a2", "b2", "a3", "all"):
        raise UsageError(f"verify-all supports a2, b2, a3 or all, not {args.group!r}")
    t0 = time.perf_counter()
    reports = verify_all_reports(args.group, args.seed)
    code = _finish_reports(reports, args.format)
    if args.format != "json":
        _emit(f"{sum(r.ok for r in reports)}/{len(reports)} reports passed in {time.perf_counter() - t0:.1f} s")
    return code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="soergelring", description="Exact split Grothendieck ring computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=("text", "json")):
        sp.add_argument("--format", choices=choices, default="text")

    grot = sub.add_parser("grot", help="the split Grothendieck ring of type A2")
    gsub = grot.add_subparsers(dest="action", required=True)
    for name, func in (("mul", cmd_grot_mul), ("table", cmd_grot_table), ("verify", cmd_grot_verify)):
        sp = gsub.add_parser(name)
        sp.add_argument("--variant", choices=(PLAIN, EXTENDED), default=PLAIN)
        sp.set_defaults(func=func)
        if name == "mul":
            sp.add_argument("expr", nargs="+", help='e.g. "B:t1 * B:t2" (several arguments are multiplied)')
            fmt(sp)
        elif name == "table":
            fmt(sp, ("text", "json", "csv", "latex"))
        else:
            sp.add_argument("--samples", type=int, default=1000)
            sp.add_argument("--seed", type=int, default=0)
            fmt(sp)

    alg = sub.add_parser("alg", help="the algebra presented by C1, C2, C3")
    asub = alg.add_subparsers(dest="action", required=True)
    sp = asub.add_parser("normalize")
    sp.add_argument("word", help='e.g. "C1*C2*C1*C3"')
    fmt(sp)
    sp.set_defaults(func=cmd_alg_normalize)
    sp = asub.add_parser("verify-iso")
    sp.add_argument("--max-len", type=int, default=8)
    fmt(sp)
    sp.set_defaults(func=cmd_alg_verify_iso)

    ch = sub.add_parser("char", help="ungraded standard characters")
    csub = ch.add_subparsers(dest="action", required=True)
    sp = csub.add_parser("word")
    sp.add_argument("expr", help='e.g. "B:tst * B:s * B:t"')
    sp.add_argument("--group", default="a2")
    fmt(sp)
    sp.set_defaults(func=cmd_char_word)

    sp = sub.add_parser("hilbert", help="Hilbert function of R(A) (polynomial degree k = internal degree 2k)")
    sp.add_argument("--group", default="a2")
    sp.add_argument("--set", action="append", help='"W", "{e,s1}" or "X" for every class of X; repeatable')
    sp.add_argument("--maxdeg", type=int, default=10, help="largest polynomial degree k")
    fmt(sp, ("text", "json", "csv"))
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("explore", help="B2/A3 checks, normal-form search, closure experiments")
    sp.add_argument("what", choices=("b2-counterexample", "a3-checks", "remark-comb", "closure"))
    sp.add_argument("--maxdeg", type=int, default=10, help="polynomial degree bound for b2-counterexample")
    sp.add_argument("--shift-window", type=int, default=6)
    sp.add_argument("--max-k", type=int, default=4, help="number of B factors in remark-comb")
    sp.add_argument("--group", default=None, help="closure group (default a3 with --generators, else a2)")
    sp.add_argument("--generators", default=None, help='e.g. "B:sts,B:t,B:u"; default all reflections')
    sp.add_argument("--budget", type=int, default=10000)
    fmt(sp)
    sp.set_defaults(func=cmd_explore)

    sp = sub.add_parser("verify-all", help="run the verification suite")
    sp.add_argument("--group", default="all", help="a2, b2, a3 or all")
    sp.add_argument("--seed", type=int, default=0)
    fmt(sp)
    sp.set_defaults(func=cmd_verify_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, InvalidClass, GroupMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    try:
        code = main()
        sys.stdout.flush()
    except BrokenPipeError:
        # output cut short by a closed pipe (e.g. ``| head``)
        import os

        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    entry()
