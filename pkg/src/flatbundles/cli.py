"""Command-line front end.

Exit codes: 0 success, 1 typed domain error, 2 usage or parse error.
Every report starts with a bracketed tag naming the operation performed.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import cohomology, coverings, descent, documents, localsystem
from .basespace import circle, format_id, format_word, torus
from .errors import DomainError, ParseError
from .exactfield import Embedding, field_make
from .matrixgroup import DEFAULT_CAP, Matrix, is_unipotent, jordan_multiplicative


class Report:
    """Key/value lines and tables, rendered as text or tab-separated rows."""

    def __init__(self, tag):
        self.tag = tag
        self.items = []
        self.exit_code = 0

    def add(self, key, *values):
        self.items.append(("kv", key, [str(v) for v in values]))
        return self

    def table(self, header, rows):
        self.items.append(("table", header, [[str(x) for x in r] for r in rows]))
        return self

    def render(self, fmt="text"):
        lines = []
        if fmt == "rows":
            for kind, key, vals in self.items:
                if kind == "kv":
                    lines.append("\t".join([key, *vals]))
                else:
                    lines.append("\t".join(key))
                    lines.extend("\t".join(r) for r in vals)
            return "\n".join(lines) + "\n"
        lines.append(f"[{self.tag}]")
        for kind, key, vals in self.items:
            if kind == "kv":
                lines.append(f"{key}: {' '.join(vals)}" if vals else key)
            else:
                widths = [max(len(h), *(len(r[i]) for r in vals)) if vals else len(h) for i, h in enumerate(key)]
                lines.append("  ".join(h.rjust(w) for h, w in zip(key, widths)))
                for r in vals:
                    lines.append("  ".join(x.rjust(w) for x, w in zip(r, widths)))
        return "\n".join(lines) + "\n"


def fmt_matrix(m: Matrix):
    return "[" + ", ".join("[" + ", ".join(row) + "]" for row in m.to_strings()) + "]"


def _add_rep(report, E, prefix="monodromy"):
    for g in E.generators:
        report.add(f"{prefix} {format_id(g)}", fmt_matrix(E.rep[g]))


# ---------------------------------------------------------------------------
# space


def cmd_space_validate(args):
    X = documents.load_space(args.file, ".")
    errors = X.validate()
    r = Report("complex-validation")
    r.add("vertices", len(X.vertices)).add("edges", len(X.edges)).add("faces", len(X.faces))
    if errors:
        for e in errors:
            r.add("error", e.code, str(e))
        print(r.render(args.format), end="")
        raise errors[0]
    r.add("status", "valid")
    return r


def cmd_space_present(args):
    X = documents.load_space(args.file, ".").check()
    pres = X.presentation
    r = Report("presentation")
    r.add("tree edges", *([format_id(e) for e in sorted(X.tree_edges)] or ["none"]))
    r.add("generators", *(format_id(g) for g in pres.generators))
    for rel in pres.relators:
        r.add("relator", format_word(rel))
    r.add("euler rank", X.euler_rank())
    return r


# ---------------------------------------------------------------------------
# local systems


def _locsys(args, path=None):
    return documents.load_local_system(path or args.file, ".", args.field)


def cmd_locsys_check(args):
    E = _locsys(args)
    r = Report("local-system")
    r.add("field", E.ctx).add("rank", E.rank).add("generators", *(format_id(g) for g in E.generators))
    _add_rep(r, E)
    r.add("status", "relators satisfied")
    return r


def cmd_locsys_trivial(args):
    E = _locsys(args)
    return Report("triviality").add("trivial", "yes" if localsystem.is_trivial(E) else "no")


def cmd_locsys_monodromy(args):
    E = _locsys(args)
    G = localsystem.monodromy_image(E, args.cap)
    return Report("monodromy-group").add("field", E.ctx).add("rank", E.rank).add("order", G.order)


def cmd_locsys_iso(args):
    E = _locsys(args, args.file)
    F = _locsys(args, args.other)
    res = localsystem.iso_test(E, F, trials=args.trials, seed=args.seed)
    r = Report("isomorphism-test").add("status", res.status)
    if res.witness is not None:
        r.add("witness", fmt_matrix(res.witness))
    if res.reason:
        r.add("reason", res.reason)
    if res.status == localsystem.INCONCLUSIVE:
        r.exit_code = 1
    return r


def cmd_locsys_sections(args):
    E = _locsys(args)
    basis = localsystem.global_sections(E)
    r = Report("global-sections").add("dimension", len(basis))
    for v in basis:
        r.add("section", "(" + ", ".join(E.ctx.format(x) for x in v) + ")")
    return r


# ---------------------------------------------------------------------------
# coverings


def _cover(args):
    return documents.load_covering(args.cover, ".")


def cmd_cover_build(args):
    c = _cover(args)
    r = Report("schreier-cover")
    r.add("degree", c.degree).add("components", len(c.orbits))
    r.add("galois", "yes" if c.is_galois else "no")
    if c.group is not None:
        r.add("group order", c.group.order)
    tot = c.total
    r.add("total", f"{len(tot.vertices)} vertices, {len(tot.edges)} edges, {len(tot.faces)} faces")
    r.table(["edge", *(str(i) for i in range(c.degree))], [[format_id(e), *c.perms[e]] for e in c.base.sorted_edges])
    if c.is_connected:
        for gt, w in coverings.schreier_words(c).items():
            r.add(f"subgroup generator {format_id(gt)}", format_word(w))
    if c.is_galois:
        r.add("etale image size", coverings.etale_image_size(c))
    if args.emit:
        Path(args.emit).write_text(documents.dump(documents.covering_to_doc(c)) + "\n")
        r.add("wrote", args.emit)
    return r


def cmd_cover_decompose(args):
    c = _cover(args)
    parts = coverings.decompose(c)
    r = Report("cover-decomposition")
    r.add("degree", c.degree).add("components", len(parts))
    r.add("component degrees", *(p.degree for p in parts))
    for k, p in enumerate(parts):
        r.add(f"component {k} fibers", *p.labels)
    return r


def cmd_cover_pullback(args):
    c = _cover(args)
    E = _locsys(args)
    P = coverings.pullback(E, c, args.lift)
    r = Report("pullback").add("rank", P.rank).add("total generators", len(P.generators))
    _add_rep(r, P)
    r.add("trivial", "yes" if localsystem.is_trivial(P) else "no")
    return r


def cmd_cover_pushforward(args):
    c = _cover(args)
    F = _locsys(args)
    E = coverings.pushforward(F, c)
    r = Report("pushforward").add("rank", E.rank)
    _add_rep(r, E)
    return r


def cmd_cover_transport(args):
    c = _cover(args)
    E = _locsys(args)
    T = coverings.Transporter(E, c)
    m = T.matrix(args.gamma, args.lift)
    r = Report("parallel-transport").add("deck element", args.gamma).add("lift", args.lift)
    r.add("transport", fmt_matrix(m))
    return r


def cmd_cover_exactseq(args):
    c = _cover(args)
    E = _locsys(args)
    rep = coverings.exact_sequence_report(E, c)
    r = Report("covering-exact-sequence")
    r.add("factors through group", "yes" if rep.factors_through_group else "no")
    r.add("pullback trivial", "yes" if rep.pullback_trivial else "no")
    r.add("kernel side matches", "yes" if rep.kernel_matches else "no")
    for g, m in rep.pullback_monodromy.items():
        r.add(f"pullback monodromy {format_id(g)}", fmt_matrix(m))
    r.add("violations", len(rep.violations))
    for v in rep.violations:
        r.add("violation", v)
    return r


# ---------------------------------------------------------------------------
# descent


def cmd_descend_field(args):
    doc, root = documents.read_json(args.file)
    c = documents.load_cocycle(doc["cocycle"], root)
    t = documents.load_trivialization(doc["trivialization"], c.space, root)
    emb = Embedding(c.ctx, t.ctx)
    h = descent.field_descent(c, t, emb)
    r = Report("field-descent").add("embedding", f"{emb.source} -> {emb.target}")
    for v in c.space.vertices:
        r.add(f"vertex {format_id(v)}", fmt_matrix(h.mats[v]))
    r.add("verified edges", len(c.space.edges))
    return r


def cmd_descend_modp(args):
    E = _locsys(args)
    res = descent.mod_p_pipeline(E, args.p, args.cap)
    r = Report("mod-p-reduction").add("prime", args.p)
    _add_rep(r, res.system, "reduced")
    r.add("group order", res.group.order)
    r.add("cover degree", res.covering.degree)
    r.add("connected", "yes" if res.covering.is_connected else "no")
    r.add("galois", "yes" if res.covering.is_galois else "no")
    r.add("trivializes", "yes" if coverings.trivializes(res.system, res.covering) else "no")
    return r


def _tower(args):
    if args.tower:
        return documents.load_tower(args.tower, ".")
    if args.depth is None:
        raise ParseError("give a tower document or --depth")
    return descent.tower_make(args.primes or [], args.depth)


def cmd_descend_tower_level(args):
    t = _tower(args)
    E = _locsys(args)
    res = descent.level_of_definition(t, args.level, E)
    r = Report("tower-level").add("level", args.level).add("defined at", res.level)
    r.add("witness", fmt_matrix(res.witness.rep["a"]))
    return r


def cmd_descend_survival(args):
    t = _tower(args)
    r = Report("finite-quotient-survival")
    r.add("primes", *t.primes).add("depth", t.depth).add("levels", len(t.indices))
    if args.m is not None:
        r.add("m", args.m).add("survival", descent.finite_quotient_survival(t, args.m))
    else:
        r.table(["m", "order"], descent.etale_quotients(t, args.bound))
    return r


# ---------------------------------------------------------------------------
# cohomology


def _ctx(args):
    return field_make(args.field or "Q")


def _cochain_str(ctx, d):
    return ", ".join(f"{format_id(k)}={ctx.format(v)}" for k, v in d.items())


def cmd_cohom_h1(args):
    X = documents.load_space(args.file, ".").check()
    ctx = _ctx(args)
    res = cohomology.h1_constant(X, ctx)
    r = Report("h1-constant").add("field", ctx).add("dimension", res.dimension)
    for b in res.basis:
        r.add("class", _cochain_str(ctx, b))
    return r


def cmd_cohom_homga(args):
    X = documents.load_space(args.file, ".").check()
    ctx = _ctx(args)
    res = cohomology.hom_to_additive(X, ctx)
    r = Report("hom-to-additive").add("field", ctx).add("dimension", res.dimension)
    for b in res.basis:
        r.add("character", _cochain_str(ctx, b))
    return r


def cmd_cohom_classes(args):
    X = documents.load_space(args.file, ".").check()
    ctx = _ctx(args)
    classes = cohomology.h1_glr_enumerate(X, ctx, args.rank, args.cap)
    r = Report("glr-classes").add("field", ctx).add("rank", args.rank).add("classes", len(classes))
    rows = []
    for k, cl in enumerate(classes):
        rows.append([k, cl.size, " ".join(fmt_matrix(m) for m in cl.representative.values())])
    r.table(["class", "size", "representative"], rows)
    return r


# ---------------------------------------------------------------------------
# demos


def cmd_demo_solenoid(args):
    r = Report("demo-solenoid")
    dyadic = descent.tower_make([2], 64)
    r.add("dyadic tower levels", *dyadic.indices)
    r.table(["m", "order"], descent.etale_quotients(dyadic, 20))
    primes = [p for p in range(2, 21) if all(p % q for q in range(2, p))]
    depth = math.lcm(*range(1, 21))
    full = descent.tower_make(primes, depth)
    survivors = [m for m, k in descent.etale_quotients(full, 20) if k != 1]
    r.add("full solenoid truncation", f"primes <= 20, depth {depth}, {len(full.indices)} levels")
    r.add("moduli 2..20 with nontrivial survival", len([m for m in survivors if m > 1]))
    Q = field_make("Q")
    M = Matrix.of(Q, [[2, 1], [0, 2]])
    s, u = jordan_multiplicative(M)
    r.add("level bundle", fmt_matrix(M))
    r.add("semisimple part", fmt_matrix(s))
    r.add("unipotent part", fmt_matrix(u))
    factors = ["diagonalizable"] + (["additive"] if not u.is_identity() and is_unipotent(u) else [])
    r.add("monodromy closure factors", " x ".join(reversed(factors)))
    return r


def cmd_demo_fibonacci(args):
    Q = field_make("Q")
    E = localsystem.LocalSystem(circle(), Q, 2, {"a": [[0, 1], [1, 1]]})
    res = descent.mod_p_pipeline(E, 2)
    r = Report("demo-fibonacci")
    _add_rep(r, E, "rational")
    _add_rep(r, res.system, "mod 2")
    r.add("order", res.group.order)
    r.add("cover degree", res.covering.degree)
    r.add("galois", "yes" if res.covering.is_galois else "no")
    r.add("trivializes", "yes" if coverings.trivializes(res.system, res.covering) else "no")
    T = coverings.Transporter(res.system, res.covering)
    gen = res.covering.rho["a"]
    r.add("transport along generator", fmt_matrix(T.matrix(gen)))
    r.add("etale image size", coverings.etale_image_size(res.covering))
    return r


def cmd_demo_torus(args):
    X = torus()
    r = Report("demo-torus")
    r.add("presentation", X.presentation)
    for spec in ("Q", "F(2)", "F(3)"):
        ctx = field_make(spec)
        h1 = cohomology.h1_constant(X, ctx).dimension
        hom = cohomology.hom_to_additive(X, ctx).dimension
        r.add(f"dim H1 over {ctx}", h1).add(f"dim Hom(pi1, additive {ctx})", hom)
    F3 = field_make("F(3)")
    r.add("rank-1 classes over F(3)", len(cohomology.h1_glr_enumerate(X, F3, 1)))
    Q = field_make("Q")
    E = cohomology.unipotent_from_class(X, Q, {"a": 1, "b": 2})
    _add_rep(r, E, "unipotent")
    return r


# ---------------------------------------------------------------------------
# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help='field spec such as "Q", "F(3)" or "F(2, x^2+x+1)"')
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--format", choices=["text", "rows"], default="text")

    parser = argparse.ArgumentParser(prog="flatbundles", description="Exact computations with local systems.")
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    space = groups.add_parser("space").add_subparsers(dest="cmd", required=True)
    leaf(space, "validate", cmd_space_validate, "validate a complex").add_argument("file")
    leaf(space, "present", cmd_space_present, "fundamental-group presentation").add_argument("file")

    ls = groups.add_parser("locsys").add_subparsers(dest="cmd", required=True)
    leaf(ls, "check", cmd_locsys_check, "validate a local system").add_argument("file")
    leaf(ls, "trivial", cmd_locsys_trivial, "triviality test").add_argument("file")
    leaf(ls, "monodromy", cmd_locsys_monodromy, "order of the monodromy group").add_argument("file")
    p = leaf(ls, "iso", cmd_locsys_iso, "isomorphism test")
    p.add_argument("file")
    p.add_argument("other")
    p.add_argument("--trials", type=int, default=8)
    leaf(ls, "sections", cmd_locsys_sections, "flat global sections").add_argument("file")

    cv = groups.add_parser("cover").add_subparsers(dest="cmd", required=True)
    p = leaf(cv, "build", cmd_cover_build, "build a covering")
    p.add_argument("cover")
    p.add_argument("--emit", help="write the total complex and projection tables here")
    leaf(cv, "decompose", cmd_cover_decompose, "connected components").add_argument("cover")
    for name, fn in (
        ("pullback", cmd_cover_pullback),
        ("pushforward", cmd_cover_pushforward),
        ("transport", cmd_cover_transport),
        ("exactseq", cmd_cover_exactseq),
    ):
        p = leaf(cv, name, fn, name)
        p.add_argument("cover")
        p.add_argument("file")
        if name in ("pullback", "transport"):
            p.add_argument("--lift", type=int, default=0)
        if name == "transport":
            p.add_argument("--gamma", type=int, required=True, help="deck element index")

    ds = groups.add_parser("descend").add_subparsers(dest="cmd", required=True)
    leaf(ds, "field", cmd_descend_field, "descend a trivialization").add_argument("file")
    p = leaf(ds, "modp", cmd_descend_modp, "mod-p reduction pipeline")
    p.add_argument("file")
    p.add_argument("--p", type=int, required=True)
    for name, fn in (("tower-level", cmd_descend_tower_level), ("survival", cmd_descend_survival)):
        p = leaf(ds, name, fn, name)
        p.add_argument("--tower", help="tower document")
        p.add_argument("--primes", type=int, nargs="*")
        p.add_argument("--depth", type=int)
        if name == "tower-level":
            p.add_argument("file")
            p.add_argument("--level", type=int, required=True)
        else:
            p.add_argument("--bound", type=int, default=20)
            p.add_argument("--m", type=int)

    ch = groups.add_parser("cohom").add_subparsers(dest="cmd", required=True)
    leaf(ch, "h1", cmd_cohom_h1, "H^1 with constant coefficients").add_argument("file")
    leaf(ch, "homga", cmd_cohom_homga, "homomorphisms to the additive group").add_argument("file")
    p = leaf(ch, "classes", cmd_cohom_classes, "rank-r representations up to conjugacy")
    p.add_argument("file")
    p.add_argument("--rank", type=int, default=1)

    dm = groups.add_parser("demo").add_subparsers(dest="cmd", required=True)
    leaf(dm, "solenoid", cmd_demo_solenoid, "dyadic and full solenoid towers")
    leaf(dm, "fibonacci", cmd_demo_fibonacci, "Fibonacci matrix mod 2")
    leaf(dm, "torus", cmd_demo_torus, "torus complex cohomology")
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.fn(args)
    except ParseError as exc:
        print(f"error: ParseError: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        print(exc.code)
        return 1
    sys.stdout.write(report.render(args.format))
    return report.exit_code


def main():
    sys.exit(run())
