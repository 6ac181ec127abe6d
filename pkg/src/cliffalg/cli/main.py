"""Command line front end: ``cliffalg <subcommand> ...``.

Exit status 0 on success, 1 on a module error (one-line diagnostic on
stderr), 2 on a parse or usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from ..core import Algebra, Multivector, Signature, format_multivector, indices_of
from ..discrete import (Graph, SimplicialComplex, brute_force_spanning_trees, homology,
                        read_labels, read_triangulation, sperner_check, spanning_tree_count)
from ..errors import CliffordError
from ..groups import apply_reflections, cartan_dieudonne, is_orthogonal, split_bivector
from ..morphisms import Outermorphism
from ..rings import FLOAT, RATIONAL
from ..tables import (BASE_TABLE, classify_complex, classify_real, octonion_algebra,
                      octonion_product, radon_hurwitz, representation_counts)
from .expr import ParseError, evaluate_text

CLI_MAX_GENERATORS = 24
CLIFFORD_TREE_MAX_VERTICES = 12
BRUTE_TREE_MAX_VERTICES = 9
FLOAT_DIGITS = 12


class UsageError(Exception):
    pass


# ----------------------------------------------------------------- output helpers

def _rounded(x: Multivector) -> Multivector:
    if x.ring.exact:
        return x
    return x.alg.from_terms({m: float(f"{c:.{FLOAT_DIGITS}g}") + 0.0 for m, c in x.items()})


def render(x: Multivector) -> str:
    return format_multivector(_rounded(x))


def terms_json(x: Multivector):
    out = []
    for m, c in _rounded(x).items():
        out.append({"mask": list(indices_of(m)), "coeff": x.ring.fmt(c)})
    return out


def _emit(args, text_lines, payload):
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _algebra(sig_text: str, ring=RATIONAL) -> Algebra:
    try:
        sig = Signature.parse(sig_text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if sig.n > CLI_MAX_GENERATORS:
        raise UsageError(f"the command line allows at most {CLI_MAX_GENERATORS} generators")
    return Algebra(sig, ring)


def _parse_matrix(text: str):
    rows = [r for r in text.split(";") if r.strip()]
    try:
        return [[Fraction(c.strip()) for c in r.split(",")] for r in rows]
    except ValueError as exc:
        raise UsageError(f"bad matrix entry: {exc}") from None


# ----------------------------------------------------------------- subcommands

def cmd_eval(args):
    alg = _algebra(args.sig)
    x = evaluate_text(args.expr, alg)
    _emit(args, [render(x)], terms_json(x))


def cmd_classify(args):
    if args.complex is not None:
        d = classify_complex(args.complex)
        line = f"{args.complex},{d.base},{d.N},{int(d.double)}"
        payload = {"n": args.complex, "base": d.base, "N": d.N, "double": d.double}
    else:
        if args.s is None or args.t is None:
            raise UsageError("classify needs s and t (or --complex n)")
        d = classify_real(args.s, args.t)
        line = d.line(args.s, args.t)
        payload = {"s": args.s, "t": args.t, "base": d.base, "N": d.N, "double": d.double}
    _emit(args, [line], payload)


def _aligned(rows):
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def cmd_tables(args):
    if args.radon_hurwitz is not None:
        print(radon_hurwitz(args.radon_hurwitz))
        return
    if args.reps:
        rows = [["n", "nu(n,0)", "d(n,0)", "nu(0,n)", "d(0,n)"]]
        for n in range(args.max + 1):
            p, q = representation_counts(n, 0), representation_counts(0, n)
            rows.append([str(n), str(p[0]), str(p[1]), str(q[0]), str(q[1])])
        for line in _aligned(rows):
            print(line)
        return
    if args.lines:
        for t in range(9):
            for s in range(9):
                print(BASE_TABLE[s, t].line(s, t))
        return
    rows = [["t\\s"] + [str(s) for s in range(9)]]
    for t in range(9):
        rows.append([str(t)] + [str(BASE_TABLE[s, t]) for s in range(9)])
    for line in _aligned(rows):
        print(line)


def cmd_factor_orthogonal(args):
    ring = FLOAT if args.float else RATIONAL
    alg = _algebra(args.sig, ring)
    F = Outermorphism(_parse_matrix(args.matrix), alg)
    if not is_orthogonal(F):
        raise CliffordError("map is not orthogonal")
    us = cartan_dieudonne(F)
    if ring.exact:
        ok = all(apply_reflections(us, e) == F.image(j + 1) for j, e in enumerate(alg.gens))
        verdict = "exact match" if ok else "MISMATCH"
    else:
        err = max((apply_reflections(us, e) - F.image(j + 1)).max_abs()
                  for j, e in enumerate(alg.gens))
        ok = err <= 1e-8
        verdict = f"max deviation {err:.1e}" + ("" if ok else " MISMATCH")
    lines = [f"u{i} = {render(u)}" for i, u in enumerate(us, start=1)]
    lines.append(f"reflections: {len(us)} (bound {2 * alg.n})")
    lines.append(f"recomposition: {verdict}")
    _emit(args, lines, {"reflections": [terms_json(u) for u in us], "verified": ok})
    if not ok:
        return 1


def cmd_split_bivector(args):
    alg = _algebra(args.sig)
    B = evaluate_text(args.expr, alg)
    blades = split_bivector(B, orthogonal=not args.general)
    _emit(args, [render(b) for b in blades] or ["0"], [terms_json(b) for b in blades])


def _with_warnings(fn, *a):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        out = fn(*a)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return out


def cmd_homology(args):
    K = _with_warnings(SimplicialComplex.from_file, args.file)
    res = homology(K, reduced=args.reduced)
    payload = {"betti": {str(k): v for k, v in sorted(res.betti.items())},
               "torsion": {str(k): v for k, v in sorted(res.torsion.items())},
               "reduced": res.reduced}
    _emit(args, str(res).splitlines(), payload)


def cmd_spanning_trees(args):
    G = Graph.from_file(args.file)
    nv = len(G.vertices)
    if nv > CLIFFORD_TREE_MAX_VERTICES:
        raise CliffordError(f"at most {CLIFFORD_TREE_MAX_VERTICES} vertices are supported")
    count = _with_warnings(spanning_tree_count, G)
    print(count)
    if args.brute_force:
        if nv > BRUTE_TREE_MAX_VERTICES:
            raise CliffordError(f"brute force is limited to {BRUTE_TREE_MAX_VERTICES} vertices")
        brute = brute_force_spanning_trees(G)
        print(f"brute-force: {brute} ({'agree' if brute == count else 'DISAGREE'})")
        if brute != count:
            return 1


def cmd_sperner(args):
    T = _with_warnings(read_triangulation, args.complex)
    labels, corners = read_labels(args.labels)
    T.corners = corners
    res = sperner_check(T, labels, args.a)
    holds = res.odd and abs(res.index) % 2 == res.complete % 2
    lines = [f"index: {res.index}", f"content: {res.content}",
             f"complete triangles: {res.complete}",
             f"parity: {'odd' if res.odd else 'even'} ({'Sperner holds' if holds else 'VIOLATED'})"]
    _emit(args, lines, {"index": res.index, "content": res.content,
                        "complete": res.complete, "odd": res.odd})


def cmd_octonion(args):
    O = octonion_algebra()
    a = evaluate_text(args.a, O)
    b = evaluate_text(args.b, O)
    x = octonion_product(a, b)
    _emit(args, [render(x)], terms_json(x))


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliffalg", description="Geometric algebra toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, json_ok=True):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        if json_ok:
            sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    sp = add("eval", cmd_eval, "evaluate a multivector expression")
    sp.add_argument("--sig", required=True, help="R(s,t,u) or sig[+,-,0,...]")
    sp.add_argument("expr")

    sp = add("classify", cmd_classify, "G(R^{s,t}) as a matrix algebra: s,t,base,N,double")
    sp.add_argument("s", type=int, nargs="?")
    sp.add_argument("t", type=int, nargs="?")
    sp.add_argument("--complex", type=int, metavar="n", help="classify G(C^n) instead")

    sp = add("tables", cmd_tables, "classification and representation tables", json_ok=False)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--reps", action="store_true", help="number and dimension of irreducibles")
    g.add_argument("--radon-hurwitz", type=int, metavar="N")
    g.add_argument("--lines", action="store_true", help="machine-readable lines for all cells")
    sp.add_argument("--max", type=int, default=8, help="last row of --reps")

    sp = add("factor-orthogonal", cmd_factor_orthogonal, "factor an orthogonal map into reflections")
    sp.add_argument("--sig", required=True)
    sp.add_argument("--matrix", required=True, help="rows separated by ';', entries by ','")
    sp.add_argument("--float", action="store_true", help="use floating point")

    sp = add("split-bivector", cmd_split_bivector, "write a bivector as a sum of 2-blades")
    sp.add_argument("--sig", required=True)
    sp.add_argument("--general", action="store_true", help="non-orthogonal split (any signature)")
    sp.add_argument("expr")

    sp = add("homology", cmd_homology, "homology of a simplicial complex file")
    sp.add_argument("file")
    sp.add_argument("--reduced", action="store_true")

    sp = add("spanning-trees", cmd_spanning_trees, "number of spanning trees of a graph file",
             json_ok=False)
    sp.add_argument("file")
    sp.add_argument("--brute-force", action="store_true", help="also count by enumeration")

    sp = add("sperner", cmd_sperner, "index and complete triangles of a labeled triangulation")
    sp.add_argument("complex")
    sp.add_argument("labels")
    sp.add_argument("--a", default="a", help="label used as the base vertex of the index")

    sp = add("octonion", cmd_octonion, "octonion product of two elements of G^0 + G^1 of R^{0,7}")
    sp.add_argument("a")
    sp.add_argument("b")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status = args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"cliffalg {args.command}: parse error: {exc}", file=sys.stderr)
        return 2
    except (CliffordError, ValueError, ArithmeticError, NotImplementedError, OSError, KeyError) as exc:
        print(f"cliffalg {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
