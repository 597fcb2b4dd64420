"""Finite coverings of 2-complexes built from permutation data.

A covering of degree ``n`` over a connected base ``X`` is stored as one
permutation of ``range(n)`` per base edge: the lift of ``e: s -> t`` starting
at ``(s, i)`` ends at ``(t, perm[e][i])``.  Fibers over every vertex are
identified with the basepoint fiber along the spanning tree, so tree edges
always carry the identity permutation.

Coverings built from a finite group ``G`` (``mode="onto-group"``) use the
elements of ``G`` as fiber indices; a cotree edge ``g`` acts by right
multiplication by ``rho(g)`` and the deck group ``G`` acts by left
multiplication.  Étale paths at a finite level are the fiber automorphisms
commuting with the deck action, i.e. right multiplications.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from . import linalg
from .basespace import TwoComplex, format_id, format_word, invert_word
from .errors import (
    Disconnected,
    NotGalois,
    NotTrivializedBy,
    RelatorViolation,
    ShapeMismatch,
    SpaceMismatch,
)
from .finitegroup import FiniteGroup
from .localsystem import CechCocycle, LocalSystem, from_cocycle, is_trivial, to_cocycle
from .matrixgroup import Matrix


def _invert_perm(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def parse_permutation(spec, n):
    """Image list (0-based) or cycle string like ``"(1 2 3)"`` (1-based)."""
    if isinstance(spec, str):
        perm = list(range(n))
        for cyc in spec.replace(")", "(").split("("):
            items = [int(x) - 1 for x in cyc.replace(",", " ").split()]
            for a, b in zip(items, items[1:] + items[:1]):
                perm[a] = b
        return tuple(perm)
    perm = tuple(int(x) for x in spec)
    if sorted(perm) != list(range(n)):
        raise ShapeMismatch(f"{spec!r} is not a permutation of {n} points")
    return perm


class Covering:
    """A finite covering of a connected base complex."""

    def __init__(self, base: TwoComplex, degree, perms, group=None, rho=None, labels=None):
        base.check()
        self.base = base
        self.degree = degree
        ident = tuple(range(degree))
        raw = {}
        for e in base.sorted_edges:
            p = tuple(perms.get(e, ident))
            if sorted(p) != list(ident):
                raise ShapeMismatch(f"lift of edge {format_id(e)} is not a permutation of the fiber")
            raw[e] = p
        self.perms = self._normalize(raw)
        self.group = group
        self.rho = dict(rho) if rho is not None else None
        self.labels = tuple(labels) if labels is not None else ident

    def _normalize(self, raw):
        base = self.base
        n = self.degree
        tau = {}
        for v, word in base.tree_words.items():
            t = tuple(range(n))
            for letter in word:
                p = raw[letter[0]] if letter[1] == 1 else _invert_perm(raw[letter[0]])
                t = tuple(p[t[i]] for i in range(n))
            tau[v] = t
        out = {}
        for e, p in raw.items():
            s, t = base.edges[e]
            tinv = _invert_perm(tau[t])
            out[e] = tuple(tinv[p[tau[s][i]]] for i in range(n))
        return out

    def __repr__(self):
        g = f", group order {self.group.order}" if self.group is not None else ""
        return f"Covering(degree={self.degree}{g})"

    # -- lifting -------------------------------------------------------------
    def letter_perm(self, letter):
        e, s = letter
        return self.perms[e] if s == 1 else _invert_perm(self.perms[e])

    def lift_end(self, word, i):
        """Fiber index where the lift of ``word`` starting at index ``i`` ends."""
        for letter in word:
            i = self.letter_perm(letter)[i]
        return i

    def lift_word(self, word, i):
        """The lifted path as a word in total-space edges."""
        out = []
        for e, s in word:
            if s == 1:
                out.append(((e, i), 1))
                i = self.perms[e][i]
            else:
                j = _invert_perm(self.perms[e])[i]
                out.append(((e, j), -1))
                i = j
        return tuple(out)

    def validate(self):
        errors = []
        for k, face in enumerate(self.base.faces):
            for i in range(self.degree):
                if self.lift_end(face, i) != i:
                    errors.append(RelatorViolation(f"face {k} does not lift to a closed path at fiber {i}"))
                    break
        return errors

    def check(self):
        errors = self.validate()
        if errors:
            raise errors[0]
        return self

    # -- total space --------------------------------------------------------
    @cached_property
    def total(self):
        """The total complex (possibly disconnected); basepoint over fiber 0."""
        base, n = self.base, self.degree
        verts = [(v, i) for v in base.vertices for i in range(n)]
        edges = {}
        for e in base.sorted_edges:
            s, t = base.edges[e]
            for i in range(n):
                edges[(e, i)] = ((s, i), (t, self.perms[e][i]))
        faces = []
        for face in base.faces:
            if not face:
                continue
            for i in range(n):
                faces.append(self.lift_word(face, i))
        return TwoComplex(verts, edges, faces, (base.basepoint, 0))

    @cached_property
    def orbits(self):
        """Fiber indices grouped by connected component of the total space."""
        n = self.degree
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            orb = []
            queue = deque([start])
            seen[start] = True
            while queue:
                i = queue.popleft()
                orb.append(i)
                for p in self.perms.values():
                    j = p[i]
                    if not seen[j]:
                        seen[j] = True
                        queue.append(j)
            out.append(sorted(orb))
        return out

    @property
    def is_connected(self):
        return len(self.orbits) == 1

    @property
    def is_galois(self):
        return self.group is not None and self.is_connected and self.group.order == self.degree

    def component_space(self, y=0):
        """Connected component of the total complex through (basepoint, y)."""
        orbit = next((o for o in self.orbits if y in o), None)
        if orbit is None:
            raise ShapeMismatch(f"fiber index {y} out of range for degree {self.degree}")
        keep = set(orbit)
        tot = self.total
        verts = [v for v in tot.vertices if v[1] in keep]
        edges = {e: st for e, st in tot.edges.items() if e[1] in keep}
        faces = [f for f in tot.faces if f[0][0][1] in keep]
        return TwoComplex(verts, edges, faces, (self.base.basepoint, y))

    # -- deck action --------------------------------------------------------
    def deck(self, h):
        """Vertex map of the deck transformation 'left multiply by h'."""
        if self.group is None:
            raise NotGalois("covering carries no group action")
        mul = self.group.mul
        return {(v, i): (v, mul(h, i)) for v in self.base.vertices for i in range(self.degree)}

    def deck_edge(self, h, edge):
        e, i = edge
        return (e, self.group.mul(h, i))


def schreier_cover(X: TwoComplex, rho, group: FiniteGroup | None = None, mode="onto-group", degree=None):
    """Covering from pi_1-data.

    ``mode="onto-group"``: ``rho`` maps generators to element indices of
    ``group``; fiber = group elements, lifts by right multiplication.
    ``mode="action"``: ``rho`` maps generators to permutations of
    ``range(degree)``.
    """
    X.check()
    gens = X.presentation.generators
    perms = {}
    if mode == "onto-group":
        if group is None:
            raise ShapeMismatch("onto-group mode needs a group")
        table = group.table
        n = group.order
        rho = {g: int(rho.get(g, 0)) for g in gens}
        for g, x in rho.items():
            if not 0 <= x < n:
                raise ShapeMismatch(f"image of {format_id(g)} is not an element index of the group")
        for g in gens:
            perms[g] = tuple(table[i][rho[g]] for i in range(n))
        cover = Covering(X, n, perms, group=group, rho=rho)
    elif mode == "action":
        if degree is None:
            degree = len(next(iter(rho.values()))) if rho else 1
        for g in gens:
            perms[g] = parse_permutation(rho.get(g, list(range(degree))), degree)
        cover = Covering(X, degree, perms)
    else:
        raise ShapeMismatch(f"unknown covering mode {mode!r}")
    return cover.check()


def decompose(c: Covering):
    """Connected components, each as a covering of the base.

    In group mode the component through index ``g`` is the coset ``g H``
    (``H`` = image of rho); it is relabeled by ``x -> g^-1 x`` so that it is
    again a Galois covering with group ``H``.
    """
    parts = []
    for orbit in c.orbits:
        pos = {}
        group = rho = None
        if c.group is not None:
            G = c.group
            H = G.subgroup(list(c.rho.values()))
            g = orbit[0]
            ginv = G.inv(g)
            hpos = {h: k for k, h in enumerate(H)}
            pos = {x: hpos[G.mul(ginv, x)] for x in orbit}
            group = FiniteGroup([G.labels[h] for h in H], [[hpos[G.mul(a, b)] for b in H] for a in H])
            rho = {gen: hpos[val] for gen, val in c.rho.items()}
        else:
            pos = {x: k for k, x in enumerate(orbit)}
        back = {k: x for x, k in pos.items()}
        perms = {e: tuple(pos[p[back[k]]] for k in range(len(orbit))) for e, p in c.perms.items()}
        labels = [c.labels[back[k]] for k in range(len(orbit))]
        parts.append(Covering(c.base, len(orbit), perms, group=group, rho=rho, labels=labels))
    return parts


def schreier_words(c: Covering, y=0):
    """Total-space generator -> base word generating pi_1(total, y) inside pi_1(base).

    Reidemeister-Schreier: spanning tree of the total graph from ``(x0, y)``;
    each non-tree edge gives the projected loop, reduced in the base.
    """
    if not c.is_connected:
        raise Disconnected("subgroup generators need a connected covering")
    tot = c.total.with_basepoint((c.base.basepoint, y))
    out = {}
    for gt in tot.presentation.generators:
        loop = tot.generator_loop(gt)
        projected = tuple((e[0], s) for e, s in loop)
        out[gt] = c.base.reduce_to_generators(projected)
    return out


def subgroup_generators(c: Covering, y=0):
    return list(schreier_words(c, y).values())


def pullback_cocycle(E: LocalSystem, c: Covering, y=0):
    if E.space != c.base:
        raise SpaceMismatch("local system does not live on the covering's base")
    base_labels = to_cocycle(E).labels
    space = c.component_space(y)
    labels = {e: base_labels[e[0]] for e in space.edges}
    return CechCocycle(space, E.ctx, E.rank, labels)


def pullback(E: LocalSystem, c: Covering, y=0):
    """Pullback to the component of the total space through (x0, y)."""
    return from_cocycle(pullback_cocycle(E, c, y))


def pushforward(F: LocalSystem, c: Covering):
    """Induced system on the base: rank = (component degree) * rank(F).

    The base label of ``e`` has block ``(i, perm_e(i))`` equal to F's label on
    the lifted edge ``(e, i)``.
    """
    verts = set(F.space.vertices)
    orbit = next((o for o in c.orbits if (c.base.basepoint, o[0]) in verts), None)
    if orbit is None or len(verts) != len(orbit) * len(c.base.vertices):
        raise SpaceMismatch("local system does not live on a component of the covering")
    flabels = to_cocycle(F).labels
    ctx, r = F.ctx, F.rank
    k = len(orbit)
    pos = {x: j for j, x in enumerate(orbit)}
    labels = {}
    for e in c.base.sorted_edges:
        rows = [[ctx.zero] * (k * r) for _ in range(k * r)]
        for i in orbit:
            a, b = pos[i], pos[c.perms[e][i]]
            h = flabels[(e, i)].rows
            for u in range(r):
                for v in range(r):
                    rows[a * r + u][b * r + v] = h[u][v]
        labels[e] = Matrix(ctx, rows)
    return from_cocycle(CechCocycle(c.base, ctx, k * r, labels))


def trivializes(E: LocalSystem, c: Covering):
    if E.space != c.base:
        raise SpaceMismatch("local system does not live on the covering's base")
    if not c.is_connected:
        raise Disconnected("trivializes() needs a connected covering")
    return is_trivial(pullback(E, c))


def factors_through_group(E: LocalSystem, c: Covering):
    """Whether E's monodromy factors through rho: pi_1 -> G.

    Walks the Cayley graph of G by the generator images, assigning E's
    matrices; a conflicting assignment means some element of ker(rho) acts
    nontrivially.
    """
    if c.group is None:
        raise NotGalois("covering carries no group")
    G = c.group
    assigned = {0: Matrix.identity(E.ctx, E.rank)}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for g in E.generators:
            b = G.mul(a, c.rho[g])
            m = assigned[a] * E.rep[g]
            if b in assigned:
                if assigned[b] != m:
                    return False
            else:
                assigned[b] = m
                queue.append(b)
    return True


@dataclass
class ExactSequenceReport:
    factors_through_group: bool
    pullback_trivial: bool
    kernel_matches: bool
    pullback_monodromy: dict = field(default_factory=dict)
    schreier_words: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations


def exact_sequence_report(E: LocalSystem, c: Covering):
    """Check the kernel side and the quotient side of the covering sequence.

    (i) the pullback's monodromy on each total generator equals E evaluated on
        the corresponding Reidemeister-Schreier word;
    (ii) the pullback is trivial exactly when E factors through the group.
    """
    if not c.is_galois:
        raise NotGalois("exact sequence report needs a Galois covering")
    words = schreier_words(c)
    pb = pullback(E, c)
    violations = []
    kernel_ok = True
    for gt, w in words.items():
        if pb.rep[gt] != E.evaluate(w):
            kernel_ok = False
            violations.append(f"pullback monodromy of {format_id(gt)} differs from E({format_word(w)})")
    factors = factors_through_group(E, c)
    trivial = is_trivial(pb)
    if factors != trivial:
        violations.append(f"pullback trivial = {trivial} but factors through G = {factors}")
    return ExactSequenceReport(factors, trivial, kernel_ok, dict(pb.rep), words, violations)


# ---------------------------------------------------------------------------
# étale paths and parallel transport


@dataclass(frozen=True)
class EtalePath:
    """Finite-level étale path x -> x: the fiber automorphism ``i -> i * element``."""

    covering: Covering
    element: int

    def bijection(self):
        G = self.covering.group
        return tuple(G.mul(i, self.element) for i in range(G.order))

    def after(self, other):
        """Composite ``self o other`` (apply ``other`` first)."""
        return EtalePath(self.covering, self.covering.group.mul(other.element, self.element))


class Transporter:
    """Flat sections of E pulled back to a Galois covering, and the transports they induce."""

    def __init__(self, E: LocalSystem, c: Covering):
        if not c.is_galois:
            raise NotGalois("parallel transport needs a Galois covering")
        if not trivializes(E, c):
            raise NotTrivializedBy("the covering does not trivialize the local system")
        self.E = E
        self.covering = c
        self.sections = self._solve()

    def _solve(self):
        E, c = self.E, self.covering
        ctx, r = E.ctx, E.rank
        labels = to_cocycle(E).labels
        verts = list(c.total.vertices)
        index = {v: k for k, v in enumerate(verts)}
        ncols = len(verts) * r
        rows = []
        for (e, i), (s, t) in c.total.edges.items():
            g = labels[e].rows
            a, b = index[s] * r, index[t] * r
            for u in range(r):
                row = [ctx.zero] * ncols
                row[a + u] = ctx.add(row[a + u], ctx.one)
                for v in range(r):
                    row[b + v] = ctx.sub(row[b + v], g[u][v])
                rows.append(row)
        basis = linalg.nullspace(ctx, rows, ncols)
        if len(basis) != r:
            raise NotTrivializedBy(f"flat sections have dimension {len(basis)}, expected {r}")
        return {v: [vec[index[v] * r:(index[v] + 1) * r] for vec in basis] for v in verts}

    def evaluation(self, y):
        """ev_y: coordinates of the basis of flat sections at total vertex y, as columns."""
        return Matrix.from_columns(self.E.ctx, self.sections[y])

    def matrix(self, gamma, lift=0, x=None):
        """ev_{gamma y} o ev_y^-1 for y = (x, lift)."""
        c = self.covering
        x = c.base.basepoint if x is None else x
        element = gamma.element if isinstance(gamma, EtalePath) else gamma
        y1 = (x, lift)
        y2 = (x, c.group.mul(lift, element))
        return self.evaluation(y2) * self.evaluation(y1).inverse()


def parallel_transport(E, c, gamma, lift=0, x=None):
    return Transporter(E, c).matrix(gamma, lift, x)


def deck_bijections(c: Covering):
    """Distinct fiber bijections induced by the deck group."""
    if c.group is None:
        raise NotGalois("covering carries no group")
    return {tuple(c.group.mul(h, i) for i in range(c.degree)) for h in range(c.group.order)}


def etale_image_size(c: Covering, x=None):
    """|image of pi_1(X, x) in Bij(fiber over x)|, computed by loop lifting."""
    if not c.is_galois:
        raise NotGalois("étale image size needs a Galois covering")
    base = c.base
    x = base.basepoint if x is None else x
    gens = []
    for g in base.presentation.generators:
        loop = invert_word(base.tree_words[x]) + base.generator_loop(g) + base.tree_words[x]
        gens.append(tuple(c.lift_end(loop, i) for i in range(c.degree)))
    if not gens:
        return 1
    return FiniteGroup.from_permutations(gens).order
