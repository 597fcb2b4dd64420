"""Finite pointed 2-complexes and their fundamental-group presentations.

A *letter* is a pair ``(edge_id, sign)`` with sign ``+1`` or ``-1``; a *word*
is a tuple of letters.  Edge and vertex ids are any sortable hashables; the
JSON documents use strings, covering spaces use ``(base_id, fiber_index)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    Disconnected,
    MissingBasepoint,
    NotAtBasepoint,
    NotClosed,
    OpenFaceWord,
    ParseError,
    UnknownEdge,
)


def parse_letter(item):
    if isinstance(item, tuple) and len(item) == 2 and item[1] in (1, -1):
        return item
    if isinstance(item, list) and len(item) == 2 and item[1] in (1, -1):
        return (item[0], item[1])
    if isinstance(item, str):
        s = item.strip()
        if s.endswith("^-1"):
            return (s[:-3], -1)
        if s.endswith("^1"):
            return (s[:-2], 1)
        return (s, 1)
    raise ParseError(f"cannot read letter {item!r}")


def parse_word(items):
    if isinstance(items, str):
        items = items.replace("*", " ").split()
    return tuple(parse_letter(x) for x in items)


def invert_word(word):
    return tuple((e, -s) for e, s in reversed(word))


def free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def format_id(x):
    if isinstance(x, tuple):
        return "#".join(format_id(y) for y in x)
    return str(x)


def format_word(word):
    if not word:
        return "1"
    return " ".join(format_id(e) if s == 1 else f"{format_id(e)}^-1" for e, s in word)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple

    def __str__(self):
        gens = ", ".join(format_id(g) for g in self.generators)
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


class TwoComplex:
    """Vertices, oriented edges (loops and parallel edges allowed), face words.

    Construction does not validate; call :meth:`validate` (error list) or
    :meth:`check` (raise the first error).
    """

    def __init__(self, vertices, edges, faces=(), basepoint=None):
        self.vertices = tuple(vertices)
        if isinstance(edges, dict):
            self.edges = {k: tuple(v) for k, v in edges.items()}
        else:
            self.edges = {e: (s, t) for e, s, t in edges}
        self.faces = tuple(parse_word(f) for f in faces)
        self.basepoint = basepoint if basepoint is not None else (self.vertices[0] if self.vertices else None)

    def __repr__(self):
        return f"TwoComplex(|V|={len(self.vertices)}, |E|={len(self.edges)}, |F|={len(self.faces)})"

    def __eq__(self, other):
        return (
            isinstance(other, TwoComplex)
            and self.vertices == other.vertices
            and self.edges == other.edges
            and self.faces == other.faces
            and self.basepoint == other.basepoint
        )

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.edges.items())), self.faces, self.basepoint))

    # -- geometry ------------------------------------------------------------
    def start(self, letter):
        e, s = letter
        src, dst = self.edges[e]
        return src if s == 1 else dst

    def end(self, letter):
        e, s = letter
        src, dst = self.edges[e]
        return dst if s == 1 else src

    def path_endpoints(self, word):
        """(start, end) of an edge path, or raise NotClosed-style errors."""
        if not word:
            return None, None
        for a, b in zip(word, word[1:]):
            if self.end(a) != self.start(b):
                raise NotClosed(f"path breaks between {format_word((a,))} and {format_word((b,))}")
        return self.start(word[0]), self.end(word[-1])

    @cached_property
    def sorted_edges(self):
        return sorted(self.edges)

    @cached_property
    def incidence(self):
        inc = {v: [] for v in self.vertices}
        for e in self.sorted_edges:
            src, dst = self.edges[e]
            inc[src].append((e, 1))
            inc[dst].append((e, -1))
        return inc

    def components(self):
        """Vertex sets of connected components, in vertex order of first member."""
        seen = set()
        comps = []
        for v0 in self.vertices:
            if v0 in seen:
                continue
            comp = []
            queue = deque([v0])
            seen.add(v0)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for letter in self.incidence[v]:
                    w = self.end(letter)
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(comp)
        return comps

    # -- validation ------------------------------------------------------------
    def validate(self):
        """List of problems (empty when valid), in a fixed order."""
        errors = []
        vset = set(self.vertices)
        if self.basepoint is None or self.basepoint not in vset:
            errors.append(MissingBasepoint(f"basepoint {self.basepoint!r} is not a vertex"))
        for e in self.sorted_edges:
            src, dst = self.edges[e]
            if src not in vset or dst not in vset:
                errors.append(UnknownEdge(f"edge {format_id(e)} has an endpoint outside the vertex set"))
        if errors:
            return errors
        for k, face in enumerate(self.faces):
            unknown = [e for e, _ in face if e not in self.edges]
            if unknown:
                errors.append(UnknownEdge(f"face {k} uses unknown edge {format_id(unknown[0])}"))
                continue
            if not face:
                continue
            try:
                s, t = self.path_endpoints(face)
            except NotClosed as exc:
                errors.append(OpenFaceWord(f"face {k}: {exc}"))
                continue
            if s != t:
                errors.append(OpenFaceWord(f"face {k} starts at {format_id(s)} and ends at {format_id(t)}"))
        if len(self.components()) > 1:
            errors.append(Disconnected(f"{len(self.components())} connected components"))
        return errors

    def check(self):
        errors = self.validate()
        if errors:
            raise errors[0]
        return self

    # -- spanning tree and presentation ---------------------------------------
    @cached_property
    def tree_words(self):
        """Word from the basepoint to each vertex along the BFS spanning tree.

        Breadth-first from the basepoint; at each vertex the incident edges are
        scanned in sorted edge-id order.
        """
        self.check()
        words = {self.basepoint: ()}
        queue = deque([self.basepoint])
        while queue:
            v = queue.popleft()
            for letter in self.incidence[v]:
                w = self.end(letter)
                if w not in words:
                    words[w] = words[v] + (letter,)
                    queue.append(w)
        return words

    @cached_property
    def tree_edges(self):
        return frozenset(word[-1][0] for word in self.tree_words.values() if word)

    @cached_property
    def presentation(self):
        gens = tuple(e for e in self.sorted_edges if e not in self.tree_edges)
        rels = tuple(self.reduce_to_generators(face) for face in self.faces)
        return Presentation(gens, rels)

    def reduce_to_generators(self, word):
        """Delete tree edges and freely reduce."""
        tree = self.tree_edges
        return free_reduce(tuple(x for x in word if x[0] not in tree))

    def generator_loop(self, g):
        """The based edge loop representing cotree edge ``g``."""
        src, dst = self.edges[g]
        return self.tree_words[src] + ((g, 1),) + invert_word(self.tree_words[dst])

    def loop_word(self, path):
        """Word in the generators represented by a closed path at the basepoint."""
        path = parse_word(path)
        if not path:
            return ()
        for e, _ in path:
            if e not in self.edges:
                raise UnknownEdge(f"unknown edge {format_id(e)}")
        s, t = self.path_endpoints(path)
        if s != self.basepoint:
            raise NotAtBasepoint(f"path starts at {format_id(s)}, basepoint is {format_id(self.basepoint)}")
        if t != s:
            raise NotClosed(f"path ends at {format_id(t)}")
        return self.reduce_to_generators(path)

    def euler_rank(self):
        return len(self.edges) - len(self.vertices) + 1

    def with_basepoint(self, v):
        return TwoComplex(self.vertices, self.edges, self.faces, v)


# ---------------------------------------------------------------------------
# the standard corpus


def circle():
    """C1: one vertex, one loop."""
    return TwoComplex(["v0"], {"a": ("v0", "v0")}, [], "v0")


def wedge(n=2):
    """Wedge of n circles (W2 for n = 2)."""
    names = "abcdefghijklmnopqrstuvwxyz"[:n]
    return TwoComplex(["v0"], {c: ("v0", "v0") for c in names}, [], "v0")


def torus():
    """T2rel: one vertex, loops a, b, face a b a^-1 b^-1."""
    return TwoComplex(["v0"], {"a": ("v0", "v0"), "b": ("v0", "v0")}, [["a", "b", "a^-1", "b^-1"]], "v0")


def projective_plane():
    """RP2rel: one vertex, loop a, face a a."""
    return TwoComplex(["v0"], {"a": ("v0", "v0")}, [["a", "a"]], "v0")


def triangle():
    """Triangle graph e1: v0->v1, e2: v0->v2, e3: v1->v2 (tree {e1, e2})."""
    return TwoComplex(
        ["v0", "v1", "v2"],
        {"e1": ("v0", "v1"), "e2": ("v0", "v2"), "e3": ("v1", "v2")},
        [],
        "v0",
    )


def cycle_graph(n):
    """n vertices on an oriented cycle (homotopy equivalent to C1)."""
    verts = [f"v{i}" for i in range(n)]
    edges = {f"e{i}": (verts[i], verts[(i + 1) % n]) for i in range(n)}
    return TwoComplex(verts, edges, [], "v0")


CORPUS = {
    "C1": circle,
    "W2": wedge,
    "T2rel": torus,
    "RP2rel": projective_plane,
    "triangle": triangle,
}
