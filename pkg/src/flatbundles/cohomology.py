"""First cohomology with constant coefficients and its group-theoretic twins.

Cochains are indexed by ``X.vertices`` (degree 0), ``X.sorted_edges``
(degree 1) and ``X.faces`` (degree 2).  The coboundaries are

    d0(f)(e) = f(dst e) - f(src e)
    d1(x)(F) = sum over letters (e, s) of F of s * x(e)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .basespace import TwoComplex, format_id
from .errors import CapExceeded, NotACocycle, ShapeMismatch
from .localsystem import CechCocycle, LocalSystem, from_cocycle
from .matrixgroup import DEFAULT_CAP, Matrix


@dataclass
class CochainComplexData:
    ctx: object
    dims: tuple
    d0: list  # |E| rows, |V| columns
    d1: list  # |F| rows, |E| columns

    def composite_is_zero(self):
        ctx = self.ctx
        nv = self.dims[0]
        for row in self.d1:
            for j in range(nv):
                acc = ctx.zero
                for k, x in enumerate(row):
                    acc = ctx.add(acc, ctx.mul(x, self.d0[k][j]))
                if not ctx.is_zero(acc):
                    return False
        return True


def cochain_complex(X: TwoComplex, ctx):
    X.check()
    vpos = {v: i for i, v in enumerate(X.vertices)}
    edges = X.sorted_edges
    epos = {e: i for i, e in enumerate(edges)}
    d0 = []
    for e in edges:
        s, t = X.edges[e]
        row = [0] * len(X.vertices)
        row[vpos[t]] += 1
        row[vpos[s]] -= 1
        d0.append([ctx.from_int(x) for x in row])
    d1 = []
    for face in X.faces:
        row = [0] * len(edges)
        for e, s in face:
            row[epos[e]] += s
        d1.append([ctx.from_int(x) for x in row])
    return CochainComplexData(ctx, (len(X.vertices), len(edges), len(X.faces)), d0, d1)


@dataclass
class CohomologyResult:
    dimension: int
    basis: list  # each a dict keyed by edge (H^1) or generator (Hom)


def _cochain_dict(X, vec):
    return dict(zip(X.sorted_edges, vec))


def h1_constant(X: TwoComplex, ctx):
    """ker d1 / im d0 with representative cocycles."""
    cc = cochain_complex(X, ctx)
    ne = cc.dims[1]
    cycles = linalg.nullspace(ctx, cc.d1, ne)
    nv = cc.dims[0]
    boundaries = [[cc.d0[k][j] for k in range(ne)] for j in range(nv)]
    reps = linalg.complement_basis(ctx, boundaries, cycles, ne)
    return CohomologyResult(len(reps), [_cochain_dict(X, v) for v in reps])


def relator_matrix(X: TwoComplex):
    """Integer exponent sums: one row per relator, one column per generator."""
    pres = X.presentation
    gpos = {g: i for i, g in enumerate(pres.generators)}
    rows = []
    for rel in pres.relators:
        row = [0] * len(pres.generators)
        for g, s in rel:
            row[gpos[g]] += s
        rows.append(row)
    return rows


def hom_to_additive(X: TwoComplex, ctx):
    """Homomorphisms from the fundamental group to the additive group of ctx."""
    gens = X.presentation.generators
    rows = [[ctx.from_int(x) for x in row] for row in relator_matrix(X)]
    basis = linalg.nullspace(ctx, rows, len(gens))
    return CohomologyResult(len(basis), [dict(zip(gens, v)) for v in basis])


def _as_cochain(X, ctx, xi):
    unknown = [e for e in xi if e not in X.edges]
    if unknown:
        raise ShapeMismatch(f"{format_id(unknown[0])} is not an edge")
    return {e: ctx.coerce(xi.get(e, 0)) for e in X.sorted_edges}


def is_cocycle(X, ctx, xi):
    cc = cochain_complex(X, ctx)
    vec = [_as_cochain(X, ctx, xi)[e] for e in X.sorted_edges]
    for row in cc.d1:
        acc = ctx.zero
        for a, b in zip(row, vec):
            acc = ctx.add(acc, ctx.mul(a, b))
        if not ctx.is_zero(acc):
            return False
    return True


def is_coboundary(X, ctx, xi):
    """Whether xi = d0 f for some vertex function f."""
    cc = cochain_complex(X, ctx)
    vec = [_as_cochain(X, ctx, xi)[e] for e in X.sorted_edges]
    if not cc.d0:
        return True
    return linalg.solve(ctx, cc.d0, vec) is not None


def unipotent_from_class(X: TwoComplex, ctx, xi):
    """Rank-2 system with edge labels [[1, xi(e)], [0, 1]]."""
    xi = _as_cochain(X, ctx, xi)
    if not is_cocycle(X, ctx, xi):
        raise NotACocycle("cochain does not vanish on every face")
    labels = {e: Matrix(ctx, [[ctx.one, x], [ctx.zero, ctx.one]]) for e, x in xi.items()}
    return from_cocycle(CechCocycle(X, ctx, 2, labels))


def class_from_unipotent(E: LocalSystem):
    """Corner entries on cotree edges, zero on the tree: a cocycle representing E's class."""
    if E.rank != 2:
        raise ShapeMismatch("expected a rank-2 system")
    ctx = E.ctx
    out = {e: ctx.zero for e in E.space.sorted_edges}
    for g, m in E.rep.items():
        (a, b), (c, d) = m.rows
        if not (ctx.is_one(a) and ctx.is_zero(c) and ctx.is_one(d)):
            raise NotACocycle(f"monodromy of {format_id(g)} is not upper unitriangular")
        out[g] = b
    return out


# ---------------------------------------------------------------------------
# rank-r classes over a finite field


@dataclass
class GLClass:
    representative: dict  # generator -> Matrix
    size: int  # number of representation tuples in the class


def general_linear(ctx, r):
    """All invertible r x r matrices, in lexicographic entry order."""
    elems = list(ctx.elements())
    out = []
    for entries in itertools.product(elems, repeat=r * r):
        m = Matrix(ctx, [entries[i * r:(i + 1) * r] for i in range(r)])
        if m.is_invertible():
            out.append(m)
    return out


def h1_glr_enumerate(X: TwoComplex, ctx, r, cap=DEFAULT_CAP):
    """Representations into GL_r(ctx) up to simultaneous conjugacy, exhaustively.

    Each class is represented by its lexicographically least tuple.
    """
    if not ctx.is_finite:
        raise ShapeMismatch("exhaustive enumeration needs a finite field")
    pres = X.presentation
    n = len(pres.generators)
    if ctx.order ** (r * r * n) > cap:
        raise CapExceeded(f"{ctx.order}^{r * r * n} tuples exceed cap {cap}")
    gl = general_linear(ctx, r)
    inverses = [m.inverse() for m in gl]
    gpos = {g: i for i, g in enumerate(pres.generators)}

    def satisfies(tup):
        for rel in pres.relators:
            acc = Matrix.identity(ctx, r)
            for g, s in rel:
                m = tup[gpos[g]]
                acc = acc * (m if s == 1 else m.inverse())
            if not acc.is_identity():
                return False
        return True

    seen = set()
    classes = []
    for tup in itertools.product(gl, repeat=n):
        if tup in seen or not satisfies(tup):
            continue
        orbit = {tuple(P * m * Pinv for m in tup) for P, Pinv in zip(gl, inverses)}
        seen |= orbit
        classes.append(GLClass(dict(zip(pres.generators, tup)), len(orbit)))
    return classes
