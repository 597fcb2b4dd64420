"""Exact square matrices over a field and the finite groups they generate."""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from . import linalg, polys
from .errors import (
    CapExceeded,
    CtxMismatch,
    NoRootFound,
    ShapeMismatch,
    SingularGenerator,
    SingularMatrix,
    UnsupportedClass,
)
from .exactfield import RATIONALS, FieldCtx, FieldElem

DEFAULT_CAP = 200_000
EXHAUSTIVE_LIMIT = 10**6


class Matrix:
    """Immutable square matrix of raw payloads over ``ctx``."""

    __slots__ = ("ctx", "rows", "_hash")

    def __init__(self, ctx: FieldCtx, rows):
        self.ctx = ctx
        self.rows = tuple(tuple(r) for r in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ShapeMismatch("matrix is not square")
        self._hash = None

    @classmethod
    def of(cls, ctx, values):
        """Build from ints, Fractions, strings or FieldElems."""
        return cls(ctx, [[ctx.coerce(v) for v in row] for row in values])

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ctx, n):
        return cls(ctx, [[ctx.zero] * n for _ in range(n)])

    @classmethod
    def diag(cls, ctx, values):
        n = len(values)
        vals = [ctx.coerce(v) for v in values]
        return cls(ctx, [[vals[i] if i == j else ctx.zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, ctx, cols):
        n = len(cols)
        return cls(ctx, [[cols[j][i] for j in range(n)] for i in range(n)])

    @property
    def n(self):
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return FieldElem(self.ctx, self.rows[i][j])

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
        if other.n != self.n:
            raise ShapeMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.ctx == other.ctx and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __mul__(self, other):
        ctx = self.ctx
        if not isinstance(other, Matrix):
            c = ctx.coerce(other)
            return Matrix(ctx, [[ctx.mul(c, x) for x in r] for r in self.rows])
        self._check(other)
        cols = list(zip(*other.rows))
        add, mul, zero = ctx.add, ctx.mul, ctx.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for x, y in zip(r, c):
                    acc = add(acc, mul(x, y))
                row.append(acc)
            out.append(row)
        return Matrix(ctx, out)

    def __rmul__(self, other):
        return self * other

    def __add__(self, other):
        self._check(other)
        ctx = self.ctx
        return Matrix(ctx, [[ctx.add(x, y) for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        ctx = self.ctx
        return Matrix(ctx, [[ctx.sub(x, y) for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)])

    def __neg__(self):
        ctx = self.ctx
        return Matrix(ctx, [[ctx.neg(x) for x in r] for r in self.rows])

    def __pow__(self, e):
        return self.power(e)

    def power(self, e):
        base = self.inverse() if e < 0 else self
        e = abs(e)
        result = Matrix.identity(self.ctx, self.n)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def det(self):
        return linalg.det(self.ctx, self.rows)

    def is_invertible(self):
        return not self.ctx.is_zero(self.det())

    def inverse(self):
        return Matrix(self.ctx, linalg.inverse(self.ctx, self.rows))

    def trace(self):
        acc = self.ctx.zero
        for i in range(self.n):
            acc = self.ctx.add(acc, self.rows[i][i])
        return acc

    def transpose(self):
        return Matrix(self.ctx, list(zip(*self.rows)))

    def is_identity(self):
        return self == Matrix.identity(self.ctx, self.n)

    def is_zero(self):
        return all(self.ctx.is_zero(x) for r in self.rows for x in r)

    def kron(self, other):
        ctx = self.ctx
        if other.ctx != ctx:
            raise CtxMismatch(f"{ctx} vs {other.ctx}")
        a, b = self.rows, other.rows
        n, m = len(a), len(b)
        return Matrix(ctx, [[ctx.mul(a[i // m][j // m], b[i % m][j % m]) for j in range(n * m)] for i in range(n * m)])

    def apply(self, v):
        ctx = self.ctx
        out = []
        for r in self.rows:
            acc = ctx.zero
            for x, y in zip(r, v):
                acc = ctx.add(acc, ctx.mul(x, y))
            out.append(acc)
        return out

    def column(self, j):
        return [r[j] for r in self.rows]

    def charpoly(self):
        return charpoly(self)

    def to_strings(self):
        return [[self.ctx.format(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.ctx}, {self.to_strings()})"


def block_diag(*mats):
    ctx = mats[0].ctx
    n = sum(m.n for m in mats)
    rows = [[ctx.zero] * n for _ in range(n)]
    off = 0
    for m in mats:
        if m.ctx != ctx:
            raise CtxMismatch(f"{ctx} vs {m.ctx}")
        for i in range(m.n):
            for j in range(m.n):
                rows[off + i][off + j] = m.rows[i][j]
        off += m.n
    return Matrix(ctx, rows)


def charpoly(M):
    """Characteristic polynomial det(xI - M), via Hessenberg reduction."""
    ctx = M.ctx
    n = M.n
    H = [list(r) for r in M.rows]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if not ctx.is_zero(H[i][m - 1])), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = ctx.inv(H[m][m - 1])
        for j in range(m + 1, n):
            u = ctx.mul(H[j][m - 1], inv)
            if ctx.is_zero(u):
                continue
            H[j] = [ctx.sub(x, ctx.mul(u, y)) for x, y in zip(H[j], H[m])]
            for row in H:
                row[m] = ctx.add(row[m], ctx.mul(u, row[j]))
    p = [[ctx.one]]
    for m in range(1, n + 1):
        pm = polys.mul(ctx, [ctx.neg(H[m - 1][m - 1]), ctx.one], p[m - 1])
        t = ctx.one
        for i in range(1, m):
            t = ctx.mul(t, H[m - i][m - i - 1])
            term = polys.scale(ctx, ctx.mul(t, H[m - i - 1][m - 1]), p[m - i - 1])
            pm = polys.sub(ctx, pm, term)
        p.append(pm)
    return p[n]


def poly_at(poly, M):
    """Evaluate a polynomial (raw coefficients) at a matrix."""
    ctx = M.ctx
    acc = Matrix.zeros(ctx, M.n)
    ident = Matrix.identity(ctx, M.n)
    for c in reversed(poly):
        acc = acc * M + ident * c
    return acc


def minimal_polynomial(M):
    """Monic minimal polynomial, from the first linear dependence among powers."""
    ctx = M.ctx
    n = M.n
    powers = [Matrix.identity(ctx, n)]
    while True:
        flat = [[x for r in P.rows for x in r] for P in powers]
        # columns are the flattened powers
        rows = [list(col) for col in zip(*flat)]
        ns = linalg.nullspace(ctx, rows, len(powers))
        if ns:
            v = ns[0]
            return polys.monic(ctx, v)
        powers.append(powers[-1] * M)


def _exponent_bound(r):
    """lcm of all n with phi(n) <= r: finite-order elements of GL_r(Q) divide it."""
    L = 1
    for n in range(1, 2 * r * r + 3):
        if sympy.totient(n) <= r:
            L = math.lcm(L, n)
    return L


# ---------------------------------------------------------------------------


@dataclass
class FiniteMatrixGroup:
    ctx: FieldCtx
    r: int
    elements: list
    generators: list
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {m: i for i, m in enumerate(self.elements)}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, m):
        return m in self._index

    def index(self, m):
        return self._index[m]

    def check_axioms(self):
        """Exhaustive closure/identity/inverse check."""
        ident = Matrix.identity(self.ctx, self.r)
        if ident not in self._index:
            return False
        for a in self.elements:
            if a.inverse() not in self._index:
                return False
            for b in self.elements:
                if a * b not in self._index:
                    return False
        return True

    def as_abstract(self):
        from .finitegroup import FiniteGroup

        table = [[self._index[a * b] for b in self.elements] for a in self.elements]
        return FiniteGroup(list(self.elements), table)


def group_closure(gens, cap=DEFAULT_CAP, ctx=None, r=None):
    """Breadth-first closure of invertible generators.

    Raises CapExceeded when the group has more than ``cap`` elements or, over
    Q, as soon as an element of infinite order turns up.
    """
    gens = list(gens)
    if gens:
        ctx = gens[0].ctx
        r = gens[0].n
    if ctx is None or r is None:
        raise ShapeMismatch("empty generator list needs ctx and r")
    for g in gens:
        if g.ctx != ctx:
            raise CtxMismatch(f"{ctx} vs {g.ctx}")
        if g.n != r:
            raise ShapeMismatch("generators of different sizes")
        if not g.is_invertible():
            raise SingularGenerator("generator is singular")
    ident = Matrix.identity(ctx, r)
    bound = _exponent_bound(r) if ctx.kind == RATIONALS else None
    elements = [ident]
    seen = {ident}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = a * g
            if b in seen:
                continue
            if bound is not None and not b.power(bound).is_identity():
                raise CapExceeded("element of infinite order in characteristic 0")
            seen.add(b)
            elements.append(b)
            if len(elements) > cap:
                raise CapExceeded(f"group order exceeds cap {cap}")
            queue.append(b)
    return FiniteMatrixGroup(ctx, r, elements, gens)


def _check_tuples(A, B):
    if len(A) != len(B):
        raise ShapeMismatch("tuples of different length")
    mats = list(A) + list(B)
    if not mats:
        raise ShapeMismatch("empty tuples")
    ctx, n = mats[0].ctx, mats[0].n
    for m in mats:
        if m.ctx != ctx:
            raise CtxMismatch(f"{ctx} vs {m.ctx}")
        if m.n != n:
            raise ShapeMismatch("matrices of different sizes")
    return ctx, n


def intertwiner_basis(A, B):
    """Basis of {T : T A_i = B_i T for all i}."""
    ctx, n = _check_tuples(A, B)
    rows = []
    # unknown T[k][l] has index k*n + l
    for a, b in zip(A, B):
        for i in range(n):
            for j in range(n):
                eq = [ctx.zero] * (n * n)
                # (T a)[i][j] = sum_l T[i][l] a[l][j]
                for l in range(n):
                    eq[i * n + l] = ctx.add(eq[i * n + l], a.rows[l][j])
                # (b T)[i][j] = sum_k b[i][k] T[k][j]
                for k in range(n):
                    eq[k * n + j] = ctx.sub(eq[k * n + j], b.rows[i][k])
                rows.append(eq)
    basis = linalg.nullspace(ctx, rows, n * n)
    return [Matrix(ctx, [v[i * n:(i + 1) * n] for i in range(n)]) for v in basis]


WITNESS = "witness"
DISTINCT = "provably-distinct"
NOT_FOUND = "not-found-in-trials"


@dataclass(frozen=True)
class ConjugacyResult:
    status: str
    witness: Matrix | None = None
    reason: str = ""

    @property
    def found(self):
        return self.status == WITNESS


def _combine(ctx, basis, coeffs):
    n = basis[0].n
    acc = Matrix.zeros(ctx, n)
    for c, b in zip(coeffs, basis):
        if not ctx.is_zero(c):
            acc = acc + b * c
    return acc


def conjugacy_witness(A, B, trials=8, seed=0):
    """Search for invertible T with T A_i T^-1 = B_i for all i.

    Over finite fields with a small intertwiner space the search is
    exhaustive, so a miss is a proof.  Otherwise random integer (or field)
    combinations of the intertwiner basis are sampled with the coefficient
    bound doubling per round; a miss is reported as ``not-found-in-trials``.
    """
    ctx, n = _check_tuples(A, B)
    if all(a == b for a, b in zip(A, B)):
        return ConjugacyResult(WITNESS, Matrix.identity(ctx, n), "equal tuples")
    for i, (a, b) in enumerate(zip(A, B)):
        if charpoly(a) != charpoly(b):
            return ConjugacyResult(DISTINCT, None, f"characteristic polynomials differ at position {i}")
    basis = intertwiner_basis(A, B)
    if not basis:
        return ConjugacyResult(DISTINCT, None, "intertwiner space is zero")
    # conjugate tuples have isomorphic intertwiner spaces Hom(A, B) = End(A) = End(B)
    if len(basis) != len(intertwiner_basis(A, A)) or len(basis) != len(intertwiner_basis(B, B)):
        return ConjugacyResult(DISTINCT, None, "intertwiner dimensions differ")
    for t in basis:
        if t.is_invertible():
            return ConjugacyResult(WITNESS, t, "basis element")
    dim = len(basis)
    if ctx.is_finite and ctx.order**dim <= EXHAUSTIVE_LIMIT:
        elems = list(ctx.elements())
        for coeffs in itertools.product(elems, repeat=dim):
            t = _combine(ctx, basis, coeffs)
            if t.is_invertible():
                return ConjugacyResult(WITNESS, t, "exhaustive search")
        return ConjugacyResult(DISTINCT, None, "no invertible intertwiner (exhaustive)")
    rng = random.Random(seed)
    bound = 1
    for _ in range(trials):
        for _ in range(4 * dim + 4):
            if ctx.is_finite:
                coeffs = [ctx.random(rng) for _ in basis]
            else:
                coeffs = [Fraction(rng.randint(-bound, bound)) for _ in basis]
            t = _combine(ctx, basis, coeffs)
            if t.is_invertible():
                return ConjugacyResult(WITNESS, t, "random combination")
        bound *= 2
    return ConjugacyResult(NOT_FOUND, None, f"no invertible combination in {trials} rounds")


def jordan_multiplicative(M):
    """Multiplicative Jordan decomposition M = M_s M_u = M_u M_s.

    Newton iteration S <- S - f(S) f'(S)^-1 on f = radical of the
    characteristic polynomial converges to the semisimple part; both factors
    are polynomials in M.
    """
    if not M.is_invertible():
        raise SingularMatrix("Jordan decomposition needs an invertible matrix")
    ctx = M.ctx
    f = polys.radical(ctx, charpoly(M))
    df = polys.deriv(ctx, f)
    S = M
    while True:
        fS = poly_at(f, S)
        if fS.is_zero():
            break
        S = S - fS * poly_at(df, S).inverse()
    return S, S.inverse() * M


def is_unipotent(M):
    ident = Matrix.identity(M.ctx, M.n)
    return (M - ident).power(M.n).is_zero()


def is_semisimple(M):
    return polys.is_squarefree(M.ctx, minimal_polynomial(M))


# ---------------------------------------------------------------------------
# roots


def _rational_nth_root(q: Fraction, d):
    """A rational d-th root of q (positive one preferred), or None."""
    if q == 0:
        return Fraction(0)
    sign = 1
    if q < 0:
        if d % 2 == 0:
            return None
        sign = -1
    num, ok1 = sympy.integer_nthroot(abs(q.numerator), d)
    den, ok2 = sympy.integer_nthroot(q.denominator, d)
    if not (ok1 and ok2):
        return None
    return sign * Fraction(int(num), int(den))


def scalar_root(ctx, a, d):
    """A d-th root of a raw element in ctx, or None when there is none.

    Raises UnsupportedClass for finite fields too large to search.
    """
    if ctx.kind == RATIONALS:
        return _rational_nth_root(a, d)
    if ctx.order > EXHAUSTIVE_LIMIT:
        raise UnsupportedClass(f"root search in {ctx} is too large")
    for x in ctx.elements():
        if ctx.pow(x, d) == a:
            return x
    return None


def eigenvalues_in_field(M):
    """Roots of the characteristic polynomial lying in ctx, with multiplicity."""
    ctx = M.ctx
    cp = charpoly(M)
    found = {}
    if ctx.kind == RATIONALS:
        x = sympy.Symbol("x")
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(cp)], x, domain="QQ")
        for root, mult in poly.ground_roots().items():
            found[Fraction(int(root.p), int(root.q))] = mult
        return found
    if ctx.order > EXHAUSTIVE_LIMIT:
        raise UnsupportedClass(f"eigenvalue search in {ctx} is too large")
    for x in ctx.elements():
        if ctx.is_zero(polys.evaluate(ctx, cp, x)):
            mult = 0
            f = cp
            while True:
                q, rem = polys.divmod_(ctx, f, [ctx.neg(x), ctx.one])
                if rem:
                    break
                mult += 1
                f = q
            found[x] = mult
    return found


def matrix_root(M, d):
    """Some N with N^d = M.

    Supported class: M diagonalizable over its own field.  NoRootFound is
    definitive for 1x1 matrices and for matrices with distinct eigenvalues
    (a root commutes with M, so it is diagonal in the eigenbasis); any other
    miss raises UnsupportedClass.
    """
    if d < 1:
        raise ValueError("root degree must be positive")
    if not M.is_invertible():
        raise SingularMatrix("root of a singular matrix")
    ctx = M.ctx
    if d == 1 or M.is_identity():
        return M
    if M.n == 1:
        root = scalar_root(ctx, M.rows[0][0], d)
        if root is None:
            raise NoRootFound(f"{ctx.format(M.rows[0][0])} has no {d}-th root in {ctx}")
        return Matrix(ctx, [[root]])
    eig = eigenvalues_in_field(M)
    if sum(eig.values()) != M.n:
        raise UnsupportedClass("characteristic polynomial does not split over the field")
    distinct = all(m == 1 for m in eig.values())
    cols = []
    diag = []
    ident = Matrix.identity(ctx, M.n)
    for lam, mult in eig.items():
        vecs = linalg.nullspace(ctx, (M - ident * lam).rows, M.n)
        if len(vecs) != mult:
            raise UnsupportedClass("matrix is not diagonalizable over the field")
        root = scalar_root(ctx, lam, d)
        if root is None:
            if distinct:
                raise NoRootFound(f"eigenvalue {ctx.format(lam)} has no {d}-th root in {ctx}")
            raise UnsupportedClass(f"eigenvalue {ctx.format(lam)} has no {d}-th root; repeated eigenvalues")
        cols.extend(vecs)
        diag.extend([root] * mult)
    P = Matrix.from_columns(ctx, cols)
    N = P * Matrix.diag(ctx, diag) * P.inverse()
    if N.power(d) != M:
        raise AssertionError("root verification failed")
    return N
