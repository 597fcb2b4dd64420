"""JSON documents for complexes, local systems, cocycles, coverings and towers.

A space reference is one of

* a corpus name (``"C1"``, ``"W2"``, ``"T2rel"``, ``"RP2rel"``, ``"triangle"``),
* a path to a complex document (relative to the referring document),
* an inline complex document,
* ``{"cover_total": <covering ref>}`` for the total space of a covering, or
  ``{"cover_component": <covering ref>, "lift": y}`` for one of its components.

Ids of total-space cells are written ``"a#2"`` (base id, fiber index).
"""

from __future__ import annotations

import json
from pathlib import Path

from .basespace import CORPUS, TwoComplex, format_id
from .coverings import Covering, parse_permutation, schreier_cover
from .descent import Tower, Trivialization
from .errors import DomainError, ParseError
from .exactfield import field_make
from .finitegroup import FiniteGroup
from .localsystem import CechCocycle, LocalSystem
from .matrixgroup import Matrix

_MALFORMED = (KeyError, TypeError, ValueError, AttributeError, IndexError)


def read_json(path):
    path = Path(path)
    try:
        with path.open() as fh:
            return json.load(fh), path.parent
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _resolve(ref, root):
    """(document, directory) for a path or an inline document."""
    if isinstance(ref, (str, Path)):
        return read_json(Path(root) / ref)
    return ref, root


def guarded(fn):
    """Turn structural mistakes in a document into ParseError."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DomainError:
            raise
        except _MALFORMED as exc:
            raise ParseError(f"malformed document: {type(exc).__name__}: {exc}") from exc

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# complexes


def complex_from_doc(doc):
    edges = doc["edges"]
    if isinstance(edges, dict):
        edge_map = {k: (v[0], v[1]) for k, v in edges.items()}
    else:
        edge_map = {}
        for item in edges:
            if item["id"] in edge_map:
                raise ParseError(f"duplicate edge id {item['id']!r}")
            edge_map[item["id"]] = (item["src"], item["dst"])
    return TwoComplex(doc["vertices"], edge_map, doc.get("faces", []), doc.get("basepoint"))


def _id_json(x):
    return format_id(x)


def complex_to_doc(X: TwoComplex):
    return {
        "vertices": [_id_json(v) for v in X.vertices],
        "edges": [{"id": _id_json(e), "src": _id_json(s), "dst": _id_json(t)} for e, (s, t) in sorted(X.edges.items())],
        "faces": [[_id_json(e) + ("" if s == 1 else "^-1") for e, s in f] for f in X.faces],
        "basepoint": _id_json(X.basepoint),
    }


@guarded
def load_space(ref, root="."):
    if isinstance(ref, str) and ref in CORPUS:
        return CORPUS[ref]()
    if isinstance(ref, dict) and "cover_total" in ref:
        return load_covering(ref["cover_total"], root).total
    if isinstance(ref, dict) and "cover_component" in ref:
        return load_covering(ref["cover_component"], root).component_space(int(ref.get("lift", 0)))
    doc, root = _resolve(ref, root)
    return complex_from_doc(doc)


# ---------------------------------------------------------------------------
# local systems and cocycles


def _keyed(space_ids, key):
    lookup = {format_id(x): x for x in space_ids}
    if key not in lookup:
        raise ParseError(f"unknown id {key!r}")
    return lookup[key]


def _matrix(ctx, rank, rows):
    m = Matrix(ctx, [[ctx.coerce(x) for x in row] for row in rows])
    if len(rows) != rank or any(len(row) != rank for row in rows):
        raise ParseError(f"expected a {rank}x{rank} matrix")
    return m


def _field(doc, default):
    spec = doc.get("field", default)
    if spec is None:
        raise ParseError("no field given")
    return field_make(spec)


@guarded
def load_local_system(ref, root=".", field=None):
    doc, root = _resolve(ref, root)
    space = load_space(doc["space"], root)
    ctx = _field(doc, field)
    rank = int(doc["rank"])
    rep = {_keyed(space.edges, k): _matrix(ctx, rank, v) for k, v in doc["rep"].items()}
    return LocalSystem(space, ctx, rank, rep)


@guarded
def load_cocycle(ref, root=".", field=None):
    doc, root = _resolve(ref, root)
    space = load_space(doc["space"], root)
    ctx = _field(doc, field)
    rank = int(doc["rank"])
    labels = {_keyed(space.edges, k): _matrix(ctx, rank, v) for k, v in doc["labels"].items()}
    return CechCocycle(space, ctx, rank, labels)


@guarded
def load_trivialization(ref, space, root=".", field=None):
    doc, root = _resolve(ref, root)
    ctx = _field(doc, field)
    rank = int(doc["rank"])
    mats = {_keyed(space.vertices, k): _matrix(ctx, rank, v) for k, v in doc["mats"].items()}
    return Trivialization(space, ctx, rank, mats)


def matrix_to_json(m: Matrix):
    return m.to_strings()


def local_system_to_doc(E: LocalSystem, space_ref):
    return {
        "space": space_ref,
        "field": str(E.ctx),
        "rank": E.rank,
        "rep": {format_id(g): matrix_to_json(m) for g, m in E.rep.items()},
    }


# ---------------------------------------------------------------------------
# coverings and towers


def _perm_group(doc_group, rho_doc, gens):
    if doc_group and "permutations" in doc_group:
        perms = doc_group["permutations"]
        n = len(perms[0]) if not isinstance(perms[0], str) else int(doc_group["degree"])
        gperms = [parse_permutation(p, n) for p in perms]
    else:
        n = int((doc_group or {}).get("degree", 0)) or None
        if n is None:
            first = next(iter(rho_doc.values()))
            if isinstance(first, str):
                raise ParseError("cycle notation needs group.degree")
            n = len(first)
        gperms = [parse_permutation(rho_doc[g], n) for g in gens if g in rho_doc]
    group = FiniteGroup.from_permutations(gperms or [tuple(range(n))])
    rho = {}
    for g in gens:
        p = parse_permutation(rho_doc.get(g, list(range(n))), n)
        try:
            rho[g] = group.index(p)
        except KeyError as exc:
            raise ParseError(f"image of {g} is not in the group") from exc
    return group, rho


@guarded
def load_covering(ref, root="."):
    doc, root = _resolve(ref, root)
    base = load_space(doc["base"], root)
    base.check()
    mode = doc.get("mode", "onto-group")
    gens = base.presentation.generators
    rho_doc = {str(k): v for k, v in doc.get("rho", {}).items()}
    names = {format_id(g): g for g in gens}
    for k in rho_doc:
        if k not in names:
            raise ParseError(f"{k!r} is not a generator of the base")
    if mode == "action":
        degree = int(doc["degree"])
        rho = {names[k]: parse_permutation(v, degree) for k, v in rho_doc.items()}
        return schreier_cover(base, rho, mode="action", degree=degree)
    if mode != "onto-group":
        raise ParseError(f"unknown covering mode {mode!r}")
    group_doc = doc.get("group")
    if group_doc and "cyclic" in group_doc:
        group = FiniteGroup.cyclic(int(group_doc["cyclic"]))
        rho = {names[k]: int(v) % group.order for k, v in rho_doc.items()}
    else:
        group, rho_s = _perm_group(group_doc, rho_doc, [format_id(g) for g in gens])
        rho = {names[k]: v for k, v in rho_s.items()}
    return schreier_cover(base, rho, group)


def covering_to_doc(c: Covering):
    """Total complex plus projection and deck tables."""
    out = {
        "degree": c.degree,
        "total": complex_to_doc(c.total),
        "projection": {format_id(v): format_id(v[0]) for v in c.total.vertices},
        "edge_projection": {format_id(e): format_id(e[0]) for e in c.total.sorted_edges},
    }
    if c.group is not None:
        out["group_order"] = c.group.order
    return out


@guarded
def load_tower(ref, root="."):
    doc, _ = _resolve(ref, root)
    return Tower([int(p) for p in doc.get("primes", [])], int(doc["depth"]))


def dump(doc):
    return json.dumps(doc, indent=2, sort_keys=True)

