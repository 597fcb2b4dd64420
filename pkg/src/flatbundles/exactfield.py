"""Exact arithmetic in Q, F_p and F_{p^k}.

A :class:`FieldCtx` does the arithmetic on *raw* payloads so that matrices can
store plain values (``Fraction``, ``int`` or a tuple of ints) and skip wrapper
objects in the inner loops.  :class:`FieldElem` is the user-facing wrapper.

Raw payloads:

* Q        -- ``fractions.Fraction`` (always in lowest terms, positive denominator)
* F_p      -- ``int`` in ``range(p)``
* F_{p^k}  -- tuple of ``k`` ints, coefficients of the residue polynomial in
              the generator ``x``, constant term first
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import sympy

from .errors import (
    CtxMismatch,
    NonPrime,
    NotInSubfield,
    ParseError,
    PrimeDividesDenominatorOrDet,
    ReducibleModulus,
    SingularMatrix,
    UnsupportedEmbedding,
)

MAX_EXTENSION_DEGREE = 12

RATIONALS = "Q"
PRIME = "Fp"
EXTENSION = "Fq"


# ---------------------------------------------------------------------------
# polynomials over F_p as int lists, constant term first


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    """Remainder of a by m over F_p (m need not be monic)."""
    a = _trim(x % p for x in a)
    m = _trim(m)
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim((x - y) % p for x, y in zip(a, b))


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible_mod_p(f, p):
    """Rabin's irreducibility test for a polynomial over F_p (constant first)."""
    f = _trim(x % p for x in f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**n, f, p), x, p):
        return False
    for q in sympy.primefactors(n):
        h = _psub(_ppowmod(x, p ** (n // q), f, p), x, p)
        if len(_pgcd(f, h, p)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# parsing

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


def parse_poly(text):
    """Parse ``"x^2+x+1"`` style text into ``{degree: integer coefficient}``."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError(f"empty polynomial {text!r}")
    coeffs = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse polynomial {text!r}")
        sign, digits, xpart, exp = m.groups()
        if not digits and not xpart:
            raise ParseError(f"cannot parse polynomial {text!r}")
        if pos > 0 and not sign:
            raise ParseError(f"missing operator in {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        d = 0 if not xpart else (int(exp) if exp else 1)
        coeffs[d] = coeffs.get(d, 0) + c
        pos = m.end()
    return coeffs


def format_poly(coeffs, var="x"):
    """Inverse of :func:`parse_poly` for a constant-first coefficient list."""
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        if d == 0:
            body = str(c)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            body = mono if c == 1 else f"{c}{mono}"
        terms.append(body)
    return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldCtx:
    """A ground field: Q, F_p or F_{p^k} = F_p[x]/(modulus).

    Build one with :func:`field_make`; the constructor assumes validated input.
    """

    kind: str
    p: int = 0
    modulus: tuple = ()

    # -- descriptors -------------------------------------------------------
    @property
    def is_finite(self):
        return self.kind != RATIONALS

    @property
    def char(self):
        return self.p

    @property
    def degree(self):
        """Degree over the prime field (1 for Q and F_p)."""
        return len(self.modulus) - 1 if self.kind == EXTENSION else 1

    @property
    def order(self):
        return None if self.kind == RATIONALS else self.p**self.degree

    def __str__(self):
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRIME:
            return f"F({self.p})"
        return f"F({self.p}, {format_poly(list(self.modulus))})"

    def __repr__(self):
        return f"FieldCtx({str(self)!r})"

    # -- constants -----------------------------------------------------------
    @cached_property
    def zero(self):
        if self.kind == RATIONALS:
            return Fraction(0)
        if self.kind == PRIME:
            return 0
        return (0,) * self.degree

    @cached_property
    def one(self):
        if self.kind == RATIONALS:
            return Fraction(1)
        if self.kind == PRIME:
            return 1
        return (1,) + (0,) * (self.degree - 1)

    @cached_property
    def generator(self):
        """The class of ``x`` in F_{p^k}; the unit otherwise."""
        if self.kind != EXTENSION:
            return self.one
        if self.degree == 1:
            return ((-self.modulus[0]) % self.p,)
        return (0, 1) + (0,) * (self.degree - 2)

    # -- arithmetic on raw payloads -----------------------------------------
    def add(self, a, b):
        if self.kind == RATIONALS:
            return a + b
        if self.kind == PRIME:
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.kind == RATIONALS:
            return a - b
        if self.kind == PRIME:
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        if self.kind == RATIONALS:
            return -a
        if self.kind == PRIME:
            return (-a) % self.p
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        if self.kind == RATIONALS:
            return a * b
        if self.kind == PRIME:
            return a * b % self.p
        return self._pad(_pmod(_pmul(a, b, self.p), self.modulus, self.p))

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == RATIONALS:
            return 1 / a
        if self.kind == PRIME:
            return pow(a, -1, self.p)
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def is_zero(self, a):
        return a == self.zero

    def is_one(self, a):
        return a == self.one

    def pth_root(self, a):
        """Inverse Frobenius (fields here are perfect)."""
        if self.kind == RATIONALS:
            return a
        if self.kind == PRIME:
            return a
        return self.pow(a, self.p ** (self.degree - 1))

    def _pad(self, coeffs):
        coeffs = list(coeffs)
        return tuple(coeffs + [0] * (self.degree - len(coeffs)))

    # -- conversion -----------------------------------------------------------
    def from_int(self, n):
        if self.kind == RATIONALS:
            return Fraction(n)
        if self.kind == PRIME:
            return n % self.p
        return self._pad([n % self.p])

    def coerce(self, value):
        """Accept an int, Fraction, string, FieldElem or raw payload."""
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise CtxMismatch(f"element of {value.ctx} used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            return self.from_int(int(value))
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            if self.kind == RATIONALS:
                return value
            return self.div(self.from_int(value.numerator), self.from_int(value.denominator))
        if self.kind == EXTENSION and isinstance(value, tuple) and len(value) == self.degree:
            return tuple(int(c) % self.p for c in value)
        raise ParseError(f"cannot interpret {value!r} in {self}")

    def parse(self, text):
        text = text.strip()
        if self.kind == RATIONALS:
            try:
                return Fraction(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational {text!r}") from exc
        if self.kind == PRIME:
            if "/" in text:
                a, b = text.split("/", 1)
                try:
                    return self.div(self.from_int(int(a)), self.from_int(int(b)))
                except (ValueError, ZeroDivisionError) as exc:
                    raise ParseError(f"bad residue {text!r}") from exc
            try:
                return int(text) % self.p
            except ValueError as exc:
                raise ParseError(f"bad residue {text!r}") from exc
        coeffs = parse_poly(text)
        result = self.zero
        for d, c in coeffs.items():
            term = self.mul(self.from_int(c), self.pow(self.generator, d))
            result = self.add(result, term)
        return result

    def format(self, a):
        if self.kind == RATIONALS:
            return str(a) if a.denominator != 1 else str(a.numerator)
        if self.kind == PRIME:
            return str(a)
        return format_poly(list(a))

    # -- enumeration --------------------------------------------------------
    def elements(self):
        """All elements in canonical order (finite fields only)."""
        if self.kind == RATIONALS:
            raise ValueError("Q is infinite")
        if self.kind == PRIME:
            return iter(range(self.p))
        return (tuple(reversed(c)) for c in itertools.product(range(self.p), repeat=self.degree))

    def index(self, a):
        """Position of a finite-field element in :meth:`elements` order."""
        if self.kind == PRIME:
            return a
        n = 0
        for c in reversed(a):
            n = n * self.p + c
        return n

    def random(self, rng, bound=5):
        """A random element; over Q a fraction with entries bounded by ``bound``."""
        if self.kind == RATIONALS:
            return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if self.kind == PRIME:
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def elem(self, value):
        return FieldElem(self, self.coerce(value))


_FIELD_RE = re.compile(r"^F\(\s*(\d+)\s*(?:,\s*(.+?)\s*)?\)$")


def field_make(spec):
    """Validated :class:`FieldCtx` from ``"Q"``, ``"F(p)"`` or ``"F(p, poly)"``.

    >>> str(field_make("F(2, x^2+x+1)"))
    'F(2, x^2+x+1)'
    """
    if isinstance(spec, FieldCtx):
        return spec
    s = spec.strip()
    if s in ("Q", "QQ"):
        return FieldCtx(RATIONALS)
    m = _FIELD_RE.match(s)
    if m is None:
        raise ParseError(f"unknown field spec {spec!r}")
    p = int(m.group(1))
    if not sympy.isprime(p):
        raise NonPrime(f"{p} is not prime")
    if m.group(2) is None:
        return FieldCtx(PRIME, p)
    coeffs = parse_poly(m.group(2))
    deg = max(coeffs)
    modulus = [0] * (deg + 1)
    for d, c in coeffs.items():
        modulus[d] = c % p
    modulus = _trim(modulus)
    if len(modulus) - 1 != deg or modulus[-1] != 1:
        raise ReducibleModulus(f"modulus {m.group(2)!r} is not monic over F_{p}")
    if deg > MAX_EXTENSION_DEGREE:
        raise ReducibleModulus(f"degree {deg} exceeds the supported {MAX_EXTENSION_DEGREE}")
    if not is_irreducible_mod_p(modulus, p):
        raise ReducibleModulus(f"{m.group(2)} is reducible over F_{p}")
    return FieldCtx(EXTENSION, p, tuple(modulus))


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    value: object

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
            return other.value
        return self.ctx.coerce(other)

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def inverse(self):
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def is_zero(self):
        return self.ctx.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.value == other.value
        try:
            return self.value == self.ctx.coerce(other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __str__(self):
        return self.ctx.format(self.value)

    def __repr__(self):
        return f"FieldElem({self.ctx}, {self})"


# ---------------------------------------------------------------------------
# embeddings


class Embedding:
    """Injective homomorphism K -> L fixing the prime field.

    Supported: identity on any field, F_p -> F_{p^k}, and F_{p^j} -> F_{p^k}
    with j | k.  For the last case the stored generator of K is sent to the
    smallest root (in :meth:`FieldCtx.elements` order) of K's modulus in L.
    """

    def __init__(self, source, target):
        source, target = field_make(source), field_make(target)
        self.source = source
        self.target = target
        if source == target:
            self.gen_image = target.generator
        elif source.kind == RATIONALS or target.kind == RATIONALS:
            raise UnsupportedEmbedding(f"no embedding {source} -> {target}")
        elif source.p != target.p or target.degree % source.degree:
            raise UnsupportedEmbedding(f"no embedding {source} -> {target}")
        elif source.kind == PRIME:
            self.gen_image = target.one
        else:
            self.gen_image = self._least_root()
        self._basis = [target.pow(self.gen_image, i) for i in range(source.degree)]

    def _least_root(self):
        L = self.target
        mod = self.source.modulus
        for cand in L.elements():
            acc = L.zero
            for c in reversed(mod):
                acc = L.add(L.mul(acc, cand), L.from_int(c))
            if L.is_zero(acc):
                return cand
        raise UnsupportedEmbedding("modulus has no root in target")  # unreachable for j | k

    def __repr__(self):
        return f"Embedding({self.source} -> {self.target})"

    def embed(self, a):
        """Image of a raw source payload."""
        K, L = self.source, self.target
        if K == L:
            return a
        if K.kind == PRIME:
            return L.from_int(a)
        acc = L.zero
        for c, b in zip(a, self._basis):
            acc = L.add(acc, L.mul(L.from_int(c), b))
        return acc

    def embed_elem(self, e):
        return FieldElem(self.target, self.embed(self.source.coerce(e)))

    def try_restrict(self, e):
        """Unique preimage of ``e`` (raw payload or FieldElem) or NotInSubfield."""
        K, L = self.source, self.target
        if isinstance(e, FieldElem):
            if e.ctx != L:
                raise CtxMismatch(f"element of {e.ctx}, embedding target {L}")
            e = e.value
        if K == L:
            return FieldElem(K, e)
        if K.kind == PRIME:
            if any(e[1:]):
                raise NotInSubfield(f"{L.format(e)} is not in {K}")
            return FieldElem(K, e[0])
        # solve sum c_i * g^i = e over F_p, one equation per coordinate of L
        from .linalg import solve

        P = FieldCtx(PRIME, L.p)
        rows = [[b[coord] for b in self._basis] for coord in range(L.degree)]
        sol = solve(P, rows, list(e))
        if sol is None:
            raise NotInSubfield(f"{L.format(e)} is not in {K}")
        return FieldElem(K, tuple(sol))


# ---------------------------------------------------------------------------
# rational matrices and reduction mod p


def _as_rational_rows(m):
    rows = m.rows if hasattr(m, "rows") else m
    return [[Fraction(x) if not isinstance(x, str) else Fraction(x) for x in row] for row in rows]


def denominator_primes(mats):
    """Primes dividing an entry denominator or a determinant numerator.

    The matrices then lie in GL_r(Z[1/prod S]).
    """
    from .linalg import det

    Q = FieldCtx(RATIONALS)
    primes = set()
    for m in mats:
        rows = _as_rational_rows(m)
        d = det(Q, rows)
        if d == 0:
            raise SingularMatrix("matrix is singular over Q")
        primes.update(sympy.primefactors(abs(d.numerator)))
        for row in rows:
            for x in row:
                primes.update(sympy.primefactors(x.denominator))
    return frozenset(primes)


def reduce_mod_p(mats, p):
    """Entrywise reduction a/b -> a * b^-1 mod p, as matrices over F_p."""
    from .matrixgroup import Matrix

    if not sympy.isprime(p):
        raise NonPrime(f"{p} is not prime")
    if p in denominator_primes(mats):
        raise PrimeDividesDenominatorOrDet(f"p = {p} divides a denominator or determinant")
    Fp = FieldCtx(PRIME, p)
    return [Matrix(Fp, [[Fp.coerce(x) for x in row] for row in _as_rational_rows(m)]) for m in mats]
