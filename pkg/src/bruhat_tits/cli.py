"""Command line front end: descriptor in, deterministic report out.

Exit codes: 0 success, 1 validation error, 2 theorem-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import affweyl, apartment, compare
from .descriptor import DescriptorError, GroupDescriptor, load, parse_rational
from .echelonnage import EchelonnageError, ValuedRootDatum, ray_value_sets
from .rank1 import axiom_report, realize
from .rank1.fields import FieldError
from .valueset import fmt_q

EXIT_OK, EXIT_INVALID, EXIT_THEOREM = 0, 1, 2


class Report:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.data: dict = {}
        self.status = EXIT_OK

    def add(self, line: str = "") -> None:
        self.lines.append(line)

    def table(self, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
        widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
        fmt = lambda r: "  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip()
        self.add("  " + fmt(header))
        for r in rows:
            self.add("  " + fmt(r))

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"

    def json(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True) + "\n"


def _vec(v: Sequence) -> str:
    return "(" + ", ".join(fmt_q(x) for x in v) + ")"


def _root(vrd: ValuedRootDatum, i: int) -> str:
    return vrd.rs.root_text(i)


def _cell(c) -> str:
    return str(c)


def parse_point(text: str, dim: int) -> tuple[Fraction, ...]:
    parts = [p for p in text.replace(" ", "").strip("()").split(",") if p != ""]
    try:
        pt = tuple(parse_rational(p) for p in parts)
    except DescriptorError as exc:
        raise DescriptorError(f"bad point {text!r}: {exc.message}") from None
    if len(pt) != dim:
        raise DescriptorError(f"point {text!r} has {len(pt)} coordinates, the apartment has dimension {dim}")
    return pt


def parse_subset(text: str) -> list[int]:
    body = text.strip().strip("{}").replace(" ", "")
    if not body:
        return []
    out = []
    for tok in body.split(","):
        tok = tok[1:] if tok.startswith("s") else tok
        if not tok.isdigit():
            raise DescriptorError(f"bad generator {tok!r} in {text!r}")
        out.append(int(tok))
    return sorted(set(out))


# ---------------------------------------------------------------------------
# Commands


def header(rep: Report, desc: GroupDescriptor, vrd: ValuedRootDatum) -> None:
    char = "unspecified" if desc.residue_char is None else str(desc.residue_char)
    rep.add(f"group: {vrd.name}, residue characteristic {char}")
    rep.data["group"] = {"label": vrd.rs.label, "rank": vrd.rs.rank, "residue_char": desc.residue_char}


def cmd_apartment(desc: GroupDescriptor, vrd: ValuedRootDatum, args) -> Report:
    rep = Report()
    header(rep, desc, vrd)
    rs = vrd.rs
    rep.add(f"roots: {len(rs.roots)} ({rs.n_positive} positive), Weyl group order {len(rs.weyl_group)}")
    rep.add()
    rep.add("rays:")
    rows = []
    rays = {}
    for name, (gp, g, g2) in vrd.orbit_value_sets().items():
        rc = vrd.cases[name] if vrd.cases else None
        rows.append([name, str(rc) if rc else "-", gp.canonical_text(), g.canonical_text(), g2.canonical_text() if g2 else "-"])
        rays[name] = {"case": str(rc) if rc else None, "gamma_prime": gp.canonical_text(), "gamma": g.canonical_text(), "gamma_2a": g2.canonical_text() if g2 else None}
    rep.table(["orbit", "case", "Gamma'", "Gamma", "Gamma_2a"], rows)
    rep.data["rays"] = rays
    rep.add()
    rep.add("roots (simple-root coordinates):")
    rows = []
    for i in range(len(rs.roots)):
        kind = "divisible" if rs.divisible(i) else ("multipliable" if rs.multipliable(i) else "")
        rows.append([str(i), _root(vrd, i), rs.orbit_of(i), vrd.gp(i).canonical_text(), kind])
    rep.table(["index", "root", "orbit", "Gamma'", "type"], rows)
    rep.add()
    cd = affweyl.alcove_basis(vrd)
    rep.add(f"fundamental alcove: base point {_vec(cd.base_point)}")
    rep.add("affine generators:")
    gens = []
    for s, g in enumerate(cd.generators):
        rep.add(f"  s{s}: reflection in a(x) + {fmt_q(g.k)} = 0, a = {_root(vrd, g.root)}")
        gens.append({"root": list(rs.roots[g.root]), "k": fmt_q(g.k)})
    rep.add("Coxeter matrix:")
    for row in cd.matrix:
        rep.add("  " + " ".join(("inf" if m is None else str(m)).rjust(3) for m in row))
    rep.add(
        f"translations of W_af have index {fmt_q(cd.translation_index)} among wall-preserving translations "
        f"(extension flag {'set' if cd.extended else 'clear'})"
    )
    rep.data["generators"] = gens
    rep.data["translation_index"] = fmt_q(cd.translation_index)
    rep.data["coxeter_matrix"] = [[m for m in row] for row in cd.matrix]
    bound = args.length_bound
    counts = [0] * (bound + 1)
    for _, w in cd.enumerate_with_words(bound):
        counts[len(w)] += 1
    rep.add(f"elements by length 0..{bound}: {' '.join(map(str, counts))}")
    rep.data["length_counts"] = counts
    rep.add()
    win = args.window
    rep.add(f"walls with |a(x)| <= {fmt_q(win)} per positive non-divisible ray:")
    rows = []
    for i in range(rs.n_positive):
        if rs.divisible(i):
            continue
        ws = vrd.wall_values(i)
        rows.append([_root(vrd, i), ws.canonical_text(), str(len(ws.members(-win, win)))])
    rep.table(["ray", "wall values a(x)", "count"], rows)
    extra = []
    for i in range(rs.n_positive):
        d = rs.double(i)
        if d is None:
            continue
        finer = [v for v in vrd.gamma[i].members(-win, win) if -v not in vrd.wall_values(i)]
        if finer:
            extra.append(f"{_root(vrd, i)}: {', '.join(fmt_q(v) for v in finer)}")
    rep.add(
        "levels of Gamma_a not carried by walls of Gamma'_a or Gamma_2a: "
        + ("; ".join(extra) if extra else "none")
    )
    return rep


def _facet_rows(vrd: ValuedRootDatum, facet, x=None):
    rs = vrd.rs
    rows = []
    for i in range(len(rs.roots)):
        row = [str(i), _root(vrd, i)]
        if x is not None:
            row.append(fmt_q(-rs.evaluate(i, x)))
        row.append(_cell(facet[i]))
        rows.append(row)
    return rows


def cmd_facet(desc, vrd, args) -> Report:
    rep = Report()
    header(rep, desc, vrd)
    rs = vrd.rs
    x = parse_point(args.point, rs.rank)
    facet = apartment.locate_facet(vrd, x)
    dim = apartment.dimension(vrd, facet)
    f = apartment.facet_concave(vrd, facet)
    fs = apartment.star_fn(vrd, f)
    levi = apartment.phi_f(vrd, f)
    kind = "alcove" if dim == rs.rank else ("vertex" if dim == 0 else f"facet of dimension {dim}")
    special = dim == 0 and len(levi.roots) == len(rs.roots) - sum(rs.divisible(i) for i in range(len(rs.roots)))
    rep.add(f"point: {_vec(x)}")
    rep.add(f"facet: {kind}" + (" (special)" if special else ""))
    rep.add()
    rep.add("per root (value -a(x), cell, f_F, f*):")
    rows = [r + [fmt_q(f[i]), fmt_q(fs[i])] for i, r in enumerate(_facet_rows(vrd, facet, x))]
    rep.table(["index", "root", "-a(x)", "cell", "f_F", "f*"], rows)
    rep.add()
    rep.add(f"Phi_f: {levi} ({len(levi.roots)} roots: {', '.join(str(i) for i in sorted(levi.roots)) or 'none'})")
    rep.add(f"central torus rank: {levi.torus_rank}")
    c1 = apartment.concavity_check(vrd, f)
    c2 = apartment.concavity_check(vrd, fs)
    for name, c in (("f_F", c1), ("f*", c2)):
        rep.add(f"concavity of {name} ({c.mode}): " + ("ok" if c.ok else f"{len(c.violations)} violations"))
        for v in c.violations:
            rep.add(f"  {v.rule} roots {v.roots}: {v.detail}")
    rep.data.update(
        point=[fmt_q(v) for v in x],
        dimension=dim,
        special=special,
        cells=[_cell(c) for c in facet.cells],
        f=[fmt_q(v) for v in f.values],
        f_star=[fmt_q(v) for v in fs.values],
        phi_f={"roots": sorted(levi.roots), "factors": [list(t) for t in levi.factors], "torus_rank": levi.torus_rank},
        concavity={"f": c1.ok, "f_star": c2.ok},
    )
    return rep


def cmd_star(desc, vrd, args) -> Report:
    rep = Report()
    header(rep, desc, vrd)
    rs = vrd.rs
    x = parse_point(args.point, rs.rank)
    facet = apartment.locate_facet(vrd, x)
    res = apartment.parabolic_correspondence(vrd, facet)
    rep.add(f"point: {_vec(x)}")
    rep.add(f"Phi_f: {res.levi}")
    rep.add(f"star: {len(res.star)} facets; parabolic subsets of Phi_f: {len(res.expected)}")
    rep.add()
    rows = []
    entries = []
    for n, (g, p) in enumerate(zip(res.star, res.parabolics)):
        pt = apartment.facet_point(vrd, g)
        dim = apartment.dimension(vrd, g)
        subset = "{" + ",".join(str(i) for i in sorted(p)) + "}"
        rows.append([f"F{n}", str(dim), _vec(pt), subset])
        entries.append({"dimension": dim, "point": [fmt_q(v) for v in pt], "parabolic": sorted(p)})
    rep.table(["facet", "dim", "interior point", "parabolic subset (root indices)"], rows)
    rep.add()
    rep.add(f"bijection onto parabolic subsets: {'verified' if res.bijective else 'FAILED'}")
    rep.add(f"closure order reversed by inclusion: {'verified' if res.order_reversing else 'FAILED'}")
    for msg in res.failures:
        rep.add(f"  {msg}")
    rep.data.update(point=[fmt_q(v) for v in x], star=entries, bijective=res.bijective, order_reversing=res.order_reversing)
    if not res.ok:
        rep.status = EXIT_THEOREM
    return rep


def cmd_cosets(desc, vrd, args) -> Report:
    rep = Report()
    header(rep, desc, vrd)
    cd = affweyl.alcove_basis(vrd)
    left, right = parse_subset(args.left), parse_subset(args.right)
    try:
        bound = int(args.bound)
    except ValueError:
        raise DescriptorError(f"length bound must be an integer, got {args.bound!r}") from None
    reps = affweyl.double_cosets(cd, left, right, bound)
    fmt_set = lambda s: "{" + ",".join(f"s{i}" for i in s) + "}"
    rep.add(f"J = {fmt_set(left)}, J' = {fmt_set(right)}, length bound {bound}")
    rep.add(f"representatives: {len(reps)}")
    rows = [
        [affweyl.word_text(d.word), str(d.length), str(d.size), "truncated" if d.truncated else ""]
        for d in reps
    ]
    rep.table(["word", "length", "coset size", "flags"], rows)
    rep.data.update(
        J=left,
        J_prime=right,
        bound=bound,
        representatives=[{"word": list(d.word), "length": d.length, "size": d.size, "truncated": d.truncated} for d in reps],
    )
    return rep


def cmd_verify(desc, vrd, args) -> Report:
    rep = Report()
    header(rep, desc, vrd)
    if desc.residue_char is None:
        raise DescriptorError("verify needs residue_char in [group]")
    out = {}
    for name, rc in sorted(desc.rays.items()):
        rep.add()
        rep.add(f"[ray.{name}] {rc}")
        try:
            real = realize(rc, desc.residue_char)
        except FieldError as exc:
            rep.add(f"  skipped: {exc}")
            out[name] = {"skipped": str(exc)}
            continue
        ar = axiom_report(real, samples=args.samples, seed=args.seed)
        gp, _, _ = ray_value_sets(rc, desc.residue_char)
        agree = ar.case == rc or gp == ray_value_sets(ar.case, desc.residue_char)[0]
        rep.add(f"  realization: {real.name}")
        rep.add(f"  Gamma'_a attained in [-2, 2]: {', '.join(fmt_q(v) for v in ar.attained)}")
        rep.add(f"  Gamma'_a from the case:       {', '.join(fmt_q(v) for v in ar.expected_prime)}")
        rep.add(f"  realized case matches descriptor: {'yes' if agree else 'NO'}")
        rep.add("  summary:")
        for check, (n, bad) in ar.summary().items():
            rep.add(f"    {check}: {n} checked, {bad} failed")
        rep.add("  instances:")
        for c in ar.checks:
            rep.add(f"    {'ok  ' if c.ok else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else ""))
        out[name] = {
            "realization": real.name,
            "summary": {k: {"checked": n, "failed": b} for k, (n, b) in ar.summary().items()},
            "attained": [fmt_q(v) for v in ar.attained],
            "ok": ar.ok and agree,
        }
        if not (ar.ok and agree):
            rep.status = EXIT_THEOREM
    rep.data["rays"] = out
    return rep


def cmd_compare(desc, vrd, args) -> Report:
    rep = Report()
    header(rep, desc, vrd)
    if desc.compare_mode is None:
        raise DescriptorError("descriptor has no [compare] section")
    if desc.compare_mode == "exotic":
        tr = compare.exotic_transport(vrd, desc.degrees)
    else:
        tr = compare.bc_transport(vrd)
    tgt = tr.target
    rep.add(f"mode: {desc.compare_mode}")
    rep.add(f"transport: {tr.description}")
    rep.add(f"target: {tgt.name}, valuation normalized on {tgt.normalization}")
    rep.add("identification x -> L x, rows of L:")
    for row in tr.identification:
        rep.add("  " + _vec(row))
    rep.add("target rays:")
    rows = [[name, gp.canonical_text()] for name, (gp, _, _) in tgt.orbit_value_sets().items()]
    rep.table(["orbit", "Gamma'"], rows)
    cmp1 = compare.walls_equal(vrd, tr.identification, tgt, args.window)
    results = [("source vs target", cmp1)]
    if desc.compare_mode == "exotic":
        cousin = compare.split_cousin(tgt.rs)
        results.append(("target vs split cousin", compare.walls_equal(tgt, compare.identity_map(tgt.rs.rank), cousin, args.window)))
    data = []
    for label, c in results:
        rep.add(
            f"walls {label}: {'equal' if c.equal else 'DIFFERENT'} "
            f"(window {fmt_q(c.window)}, period {fmt_q(c.period)}, {c.counted} walls compared)"
        )
        if c.discrepancy:
            rep.add(f"  first discrepancy: {c.discrepancy}")
            rep.status = EXIT_THEOREM
        data.append({"comparison": label, "equal": c.equal, "window": fmt_q(c.window), "period": fmt_q(c.period), "discrepancy": c.discrepancy})
    rep.data.update(
        mode=desc.compare_mode,
        target={"label": tgt.rs.label, "rank": tgt.rs.rank, "normalization": tgt.normalization},
        identification=[[fmt_q(v) for v in row] for row in tr.identification],
        results=data,
    )
    return rep


COMMANDS = {
    "apartment": cmd_apartment,
    "facet": cmd_facet,
    "star": cmd_star,
    "cosets": cmd_cosets,
    "verify": cmd_verify,
    "compare": cmd_compare,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors are validation errors (exit 1); exit 2 is reserved for failed checks."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--group", required=True, help="descriptor file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--window", type=parse_rational, default=Fraction(4), help="wall window (rational)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--length-bound", type=int, default=4, dest="length_bound")
    common.add_argument("--samples", type=int, default=100, help=argparse.SUPPRESS)
    parser = _Parser(
        prog="bruhat-tits",
        description="Apartments, facets and affine Weyl combinatorics of valued root data.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("apartment", parents=[common], help="value sets, walls and the affine Weyl group")
    p = sub.add_parser("facet", parents=[common], help="the facet of a point")
    p.add_argument("point", help="comma-separated rationals, e.g. 0,1/2 (use -- before negative values)")
    p = sub.add_parser("star", parents=[common], help="star of the facet of a point and its parabolic subsets")
    p.add_argument("point")
    p = sub.add_parser("cosets", parents=[common], help="double coset representatives")
    p.add_argument("left", help="generator subset J, e.g. {} or {0,1}")
    p.add_argument("right", help="generator subset J'")
    p.add_argument("bound", help="length bound")
    sub.add_parser("verify", parents=[common], help="rank-one valuation checks")
    sub.add_parser("compare", parents=[common], help="comparison isomorphism from [compare]")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        desc = load(args.group)
        vrd = desc.datum()
        rep = COMMANDS[args.command](desc, vrd, args)
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except (DescriptorError, EchelonnageError, FieldError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    out.write(rep.json() if args.format == "json" else rep.text())
    return rep.status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
