"""Descent: along field extensions, modulo primes, and down cyclic towers.

Towers are the single-loop family: every level is a circle and the level
``lam`` circle covers the level ``mu`` circle (``mu | lam``) by the connected
cyclic covering of degree ``lam / mu``.  Pulling a local system back along it
raises the loop monodromy to the power ``lam / mu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import sympy

from .basespace import TwoComplex, circle, format_id
from .coverings import Covering, schreier_cover
from .errors import (
    BadDepth,
    BadModulus,
    DescentFailure,
    LevelNotInTower,
    NonPrime,
    NoRootFound,
    NotATrivialization,
    NotInSubfield,
    ShapeMismatch,
)
from .exactfield import PRIME, RATIONALS, Embedding, FieldCtx, reduce_mod_p
from .finitegroup import FiniteGroup
from .localsystem import CechCocycle, LocalSystem
from .matrixgroup import DEFAULT_CAP, FiniteMatrixGroup, Matrix, group_closure, matrix_root


# ---------------------------------------------------------------------------
# field descent


def embed_matrix(emb: Embedding, M: Matrix):
    return Matrix(emb.target, [[emb.embed(x) for x in row] for row in M.rows])


def restrict_matrix(emb: Embedding, M: Matrix):
    """Entrywise preimage; raises NotInSubfield."""
    return Matrix(emb.source, [[emb.try_restrict(x).value for x in row] for row in M.rows])


class Trivialization:
    """Vertex matrices ``l_v`` with ``l_src^-1 l_dst`` equal to each edge label."""

    def __init__(self, space: TwoComplex, ctx, rank, mats):
        self.space = space
        self.ctx = ctx
        self.rank = rank
        self.mats = {}
        for v in space.vertices:
            if v not in mats:
                raise ShapeMismatch(f"no matrix at vertex {format_id(v)}")
            m = mats[v] if isinstance(mats[v], Matrix) else Matrix.of(ctx, mats[v])
            if m.n != rank:
                raise ShapeMismatch(f"matrix at {format_id(v)} is not {rank}x{rank}")
            self.mats[v] = m

    def violations(self, labels):
        out = []
        for e in self.space.sorted_edges:
            s, t = self.space.edges[e]
            ls = self.mats[s]
            if not ls.is_invertible() or ls.inverse() * self.mats[t] != labels[e]:
                out.append(e)
        return out

    def trivializes(self, cocycle: CechCocycle):
        return not self.violations(cocycle.labels)

    def __repr__(self):
        return f"Trivialization(rank={self.rank}, field={self.ctx}, vertices={len(self.mats)})"


def field_descent(c: CechCocycle, t: Trivialization, emb: Embedding):
    """Trivialization over the small field K from one over the extension L.

    Normalizing by the basepoint matrix gives ``h_v = l_x0^-1 l_v``, the
    product of the (K-rational) labels along any path from the basepoint.
    """
    if c.ctx != emb.source or t.ctx != emb.target:
        raise ShapeMismatch("cocycle and trivialization do not match the embedding")
    lifted = {e: embed_matrix(emb, m) for e, m in c.labels.items()}
    bad = t.violations(lifted)
    if bad:
        raise NotATrivialization(f"identity fails on edge {format_id(bad[0])}")
    a_inv = t.mats[c.space.basepoint].inverse()
    out = {}
    for v in c.space.vertices:
        h = a_inv * t.mats[v]
        try:
            out[v] = restrict_matrix(emb, h)
        except NotInSubfield as exc:  # impossible for a genuine trivialization
            raise DescentFailure(f"matrix at {format_id(v)} is not defined over {emb.source}") from exc
    result = Trivialization(c.space, c.ctx, c.rank, out)
    if not result.trivializes(c):
        raise DescentFailure("descended matrices do not trivialize the cocycle")
    return result


# ---------------------------------------------------------------------------
# reduction modulo p


@dataclass
class PipelineResult:
    system: LocalSystem
    group: FiniteMatrixGroup
    covering: Covering


def mod_p_pipeline(E: LocalSystem, p, cap=DEFAULT_CAP):
    """Reduce a rational system mod p and build the Galois cover of its monodromy group."""
    if E.ctx.kind != RATIONALS:
        raise ShapeMismatch("mod-p reduction needs a system over Q")
    gens = E.generators
    reduced = reduce_mod_p([E.rep[g] for g in gens], p)
    Ep = LocalSystem(E.space, FieldCtx(PRIME, p), E.rank, dict(zip(gens, reduced)))
    group = group_closure(reduced, cap, ctx=Ep.ctx, r=E.rank)
    abstract = group.as_abstract()
    rho = {g: group.index(Ep.rep[g]) for g in gens}
    cover = schreier_cover(E.space, rho, abstract)
    return PipelineResult(Ep, group, cover)


# ---------------------------------------------------------------------------
# cyclic towers


def smooth_numbers(primes, bound):
    """All products of the given primes that are <= bound, ascending."""
    out = [1]
    for p in sorted(set(primes)):
        extra = []
        for n in out:
            n *= p
            while n <= bound:
                extra.append(n)
                n *= p
        out.extend(extra)
    return sorted(out)


class Tower:
    """Projective system of circles indexed by P-smooth integers up to ``depth``."""

    def __init__(self, primes, depth):
        if not isinstance(depth, int) or depth < 1:
            raise BadDepth(f"depth must be a positive integer, got {depth!r}")
        for p in primes:
            if not sympy.isprime(p):
                raise NonPrime(f"{p} is not prime")
        self.primes = tuple(sorted(set(primes)))
        self.depth = depth
        self.indices = smooth_numbers(self.primes, depth)
        self._index_set = set(self.indices)

    def __repr__(self):
        return f"Tower(primes={list(self.primes)}, depth={self.depth}, levels={len(self.indices)})"

    def __contains__(self, lam):
        return lam in self._index_set

    def level_space(self, lam):
        self._need(lam)
        return circle()

    def _need(self, *levels):
        for lam in levels:
            if lam not in self._index_set:
                raise LevelNotInTower(f"{lam} is not a level of {self!r}")

    def transition(self, lam, mu):
        """Cyclic covering of the level-mu circle realizing level lam."""
        self._need(lam, mu)
        if lam % mu:
            raise LevelNotInTower(f"{mu} does not divide {lam}")
        return schreier_cover(circle(), {"a": 1 % (lam // mu)}, FiniteGroup.cyclic(lam // mu))

    def fiber_map(self, nu, lam, mu):
        """Fiber of level nu over level mu, mapped to the fiber of lam over mu."""
        self._need(nu, lam, mu)
        if nu % lam or lam % mu:
            raise LevelNotInTower("levels are not divisibility ordered")
        return tuple(i % (lam // mu) for i in range(nu // mu))

    def pull(self, E: LocalSystem, mu, lam):
        """Pullback of a level-mu system to level lam: monodromy to the power lam/mu."""
        self._need(lam, mu)
        if lam % mu:
            raise LevelNotInTower(f"{mu} does not divide {lam}")
        return LocalSystem(circle(), E.ctx, E.rank, {"a": E.rep["a"].power(lam // mu)})


def tower_make(primes, depth):
    return Tower(primes, depth)


@dataclass
class LevelOfDefinition:
    level: int
    witness: LocalSystem


def level_of_definition(t: Tower, lam, E: LocalSystem):
    """Coarsest level mu | lam from which E is pulled back, with a witness system there."""
    t._need(lam)
    if tuple(E.generators) != ("a",):
        raise ShapeMismatch("tower levels are single-loop circles")
    M = E.rep["a"]
    for mu in t.indices:
        if mu > lam:
            break
        if lam % mu:
            continue
        try:
            root = matrix_root(M, lam // mu)
        except NoRootFound:
            continue
        witness = LocalSystem(circle(), E.ctx, E.rank, {"a": root})
        return LevelOfDefinition(mu, witness)
    raise AssertionError("level lam itself always works")  # pragma: no cover


def finite_quotient_survival(t: Tower, m):
    """Order of the eventual image of Z/m down the tower.

    The image of level lam in the bottom copy of Z/m is gcd(lam, m) Z/m; the
    running intersection over the levels is tracked by its generator.
    """
    if not isinstance(m, int) or m < 1:
        raise BadModulus(f"modulus must be a positive integer, got {m!r}")
    gen = 1
    for lam in t.indices:
        gen = math.lcm(gen, math.gcd(lam, m))
        if gen == m:
            break
    return m // gen


def etale_quotients(t: Tower, bound):
    if not isinstance(bound, int) or bound < 1:
        raise BadModulus(f"bound must be a positive integer, got {bound!r}")
    return [(m, finite_quotient_survival(t, m)) for m in range(1, bound + 1)]
