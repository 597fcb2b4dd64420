"""Local systems as monodromy representations and as edge cocycles.

Conventions: a cocycle label ``g_e`` on an edge ``e: s -> t`` relates flat
coordinates by ``v_s = g_e v_t``.  The monodromy of a loop is the ordered
product of its labels (inverse labels for reversed letters), so a flat section
has, at the basepoint, a vector fixed by every generator's monodromy.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .basespace import TwoComplex, format_id, format_word
from .errors import (
    CtxMismatch,
    FaceProductNotIdentity,
    RelatorViolation,
    ShapeMismatch,
    SingularMatrix,
    SpaceMismatch,
)
from .matrixgroup import DEFAULT_CAP, Matrix, block_diag, charpoly, conjugacy_witness, group_closure


def _coerce_matrix(ctx, rank, m):
    if not isinstance(m, Matrix):
        m = Matrix.of(ctx, m)
    if m.ctx != ctx:
        raise CtxMismatch(f"matrix over {m.ctx}, system over {ctx}")
    if m.n != rank:
        raise ShapeMismatch(f"expected {rank}x{rank}, got {m.n}x{m.n}")
    return m


def word_product(ctx, rank, labels, word):
    """Ordered product of labels along a word (inverse for sign -1)."""
    acc = Matrix.identity(ctx, rank)
    for e, s in word:
        m = labels[e]
        acc = acc * (m if s == 1 else m.inverse())
    return acc


class LocalSystem:
    """A representation of the fundamental group of a connected 2-complex.

    ``rep`` maps each presentation generator (cotree edge) to an invertible
    matrix; relators must evaluate to the identity.
    """

    def __init__(self, space: TwoComplex, ctx, rank, rep):
        space.check()
        self.space = space
        self.ctx = ctx
        self.rank = rank
        pres = space.presentation
        missing = [g for g in pres.generators if g not in rep]
        if missing:
            raise ShapeMismatch(f"no matrix for generator {format_id(missing[0])}")
        extra = [g for g in rep if g not in pres.generators]
        if extra:
            raise ShapeMismatch(f"{format_id(extra[0])} is not a generator")
        self.rep = {g: _coerce_matrix(ctx, rank, rep[g]) for g in pres.generators}
        for g, m in self.rep.items():
            if not m.is_invertible():
                raise SingularMatrix(f"monodromy of {format_id(g)} is singular")
        for rel in pres.relators:
            if not self.evaluate(rel).is_identity():
                raise RelatorViolation(f"relator {format_word(rel)} does not evaluate to the identity")

    @classmethod
    def trivial(cls, space, ctx, rank):
        ident = Matrix.identity(ctx, rank)
        return cls(space, ctx, rank, {g: ident for g in space.presentation.generators})

    @property
    def generators(self):
        return self.space.presentation.generators

    def evaluate(self, word):
        """Monodromy of a word in the generators."""
        return word_product(self.ctx, self.rank, self.rep, word)

    def holonomy(self, path):
        """Monodromy of a closed edge path at the basepoint."""
        return self.evaluate(self.space.loop_word(path))

    def matrices(self):
        return [self.rep[g] for g in self.generators]

    def __eq__(self, other):
        return (
            isinstance(other, LocalSystem)
            and self.space == other.space
            and self.ctx == other.ctx
            and self.rank == other.rank
            and self.rep == other.rep
        )

    def __repr__(self):
        return f"LocalSystem(rank={self.rank}, field={self.ctx}, generators={len(self.rep)})"


class CechCocycle:
    """Invertible edge labels whose product around every face is the identity."""

    def __init__(self, space: TwoComplex, ctx, rank, labels):
        space.check()
        self.space = space
        self.ctx = ctx
        self.rank = rank
        missing = [e for e in space.sorted_edges if e not in labels]
        if missing:
            raise ShapeMismatch(f"no label for edge {format_id(missing[0])}")
        self.labels = {e: _coerce_matrix(ctx, rank, labels[e]) for e in space.sorted_edges}
        for e, m in self.labels.items():
            if not m.is_invertible():
                raise SingularMatrix(f"label of {format_id(e)} is singular")
        for k, face in enumerate(space.faces):
            if not self.along(face).is_identity():
                raise FaceProductNotIdentity(f"face {k} ({format_word(face)})")

    def along(self, word):
        return word_product(self.ctx, self.rank, self.labels, word)

    def label(self, letter):
        e, s = letter
        return self.labels[e] if s == 1 else self.labels[e].inverse()

    def __repr__(self):
        return f"CechCocycle(rank={self.rank}, field={self.ctx}, edges={len(self.labels)})"


def from_cocycle(c: CechCocycle) -> LocalSystem:
    """Monodromy of each cotree edge along its based tree loop."""
    space = c.space
    tree_mats = {v: c.along(w) for v, w in space.tree_words.items()}
    rep = {}
    for g in space.presentation.generators:
        src, dst = space.edges[g]
        rep[g] = tree_mats[src] * c.labels[g] * tree_mats[dst].inverse()
    return LocalSystem(space, c.ctx, c.rank, rep)


def to_cocycle(E: LocalSystem) -> CechCocycle:
    """Identity on tree edges, the monodromy on cotree edges."""
    ident = Matrix.identity(E.ctx, E.rank)
    labels = {e: E.rep.get(e, ident) for e in E.space.sorted_edges}
    return CechCocycle(E.space, E.ctx, E.rank, labels)


def is_trivial(E: LocalSystem) -> bool:
    return all(m.is_identity() for m in E.rep.values())


def _same_base(E, F):
    if E.space != F.space:
        raise SpaceMismatch("local systems live on different spaces")
    if E.ctx != F.ctx:
        raise CtxMismatch(f"{E.ctx} vs {F.ctx}")


def direct_sum(E, F):
    _same_base(E, F)
    return LocalSystem(E.space, E.ctx, E.rank + F.rank, {g: block_diag(E.rep[g], F.rep[g]) for g in E.generators})


def tensor(E, F):
    _same_base(E, F)
    return LocalSystem(E.space, E.ctx, E.rank * F.rank, {g: E.rep[g].kron(F.rep[g]) for g in E.generators})


def dual(E):
    return LocalSystem(E.space, E.ctx, E.rank, {g: m.inverse().transpose() for g, m in E.rep.items()})


def hom(E, F):
    """Hom(E, F) realized as dual(E) tensor F."""
    return tensor(dual(E), F)


def monodromy_image(E, cap=DEFAULT_CAP):
    return group_closure(E.matrices(), cap, ctx=E.ctx, r=E.rank)


ISOMORPHIC = "isomorphic"
DISTINCT = "provably-distinct"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class IsoResult:
    status: str
    witness: Matrix | None = None
    reason: str = ""


def iso_test(E, F, trials=8, seed=0):
    """Isomorphic (with T: T E(g) T^-1 = F(g)), provably distinct, or inconclusive."""
    if E.space != F.space:
        raise SpaceMismatch("local systems live on different spaces")
    if E.ctx != F.ctx:
        raise CtxMismatch(f"{E.ctx} vs {F.ctx}")
    if E.rank != F.rank:
        return IsoResult(DISTINCT, None, f"ranks {E.rank} and {F.rank} differ")
    gens = E.generators
    if not gens:
        return IsoResult(ISOMORPHIC, Matrix.identity(E.ctx, E.rank), "no generators")
    for i, g in enumerate(gens):
        for h in gens[i:]:
            if charpoly(E.rep[g] * E.rep[h]) != charpoly(F.rep[g] * F.rep[h]):
                return IsoResult(DISTINCT, None, f"characteristic polynomials of {format_id(g)} {format_id(h)} differ")
    res = conjugacy_witness(E.matrices(), F.matrices(), trials=trials, seed=seed)
    if res.status == "witness":
        return IsoResult(ISOMORPHIC, res.witness, res.reason)
    if res.status == "provably-distinct":
        return IsoResult(DISTINCT, None, res.reason)
    return IsoResult(INCONCLUSIVE, None, res.reason)


def global_sections(E):
    """Basis of the common fixed space of all generator monodromies."""
    ctx, r = E.ctx, E.rank
    ident = Matrix.identity(ctx, r)
    rows = []
    for m in E.matrices():
        rows.extend((m - ident).rows)
    return linalg.nullspace(ctx, rows, r)


@dataclass(frozen=True)
class TrivialSub:
    system: LocalSystem
    inclusion: list  # basis vectors of the fixed space in E's fiber

    @property
    def rank(self):
        return self.system.rank


def max_trivial_sub(E):
    """The trivial subsystem spanned by the flat global sections."""
    basis = global_sections(E)
    return TrivialSub(LocalSystem.trivial(E.space, E.ctx, len(basis)), basis)
