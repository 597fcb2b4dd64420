"""Gaussian elimination over a :class:`~flatbundles.exactfield.FieldCtx`.

All routines take and return lists of rows of raw payloads; inputs are never
mutated.
"""

from .errors import SingularMatrix


def rref(ctx, rows, ncols=None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if not ctx.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not ctx.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(ctx, rows, ncols=None):
    return len(rref(ctx, rows, ncols)[1])


def nullspace(ctx, rows, ncols):
    """Basis of {v : rows . v = 0} as a list of vectors of length ``ncols``."""
    if not rows:
        return [[ctx.one if i == j else ctx.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(ctx, rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ctx.zero] * ncols
        v[f] = ctx.one
        for i, pc in enumerate(pivots):
            v[pc] = ctx.neg(R[i][f])
        basis.append(v)
    return basis


def solve(ctx, A, b):
    """One solution x of A x = b, or None when inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(ctx, aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ctx.zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    return x


def det(ctx, rows):
    m = [list(r) for r in rows]
    n = len(m)
    d = ctx.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not ctx.is_zero(m[i][c])), None)
        if piv is None:
            return ctx.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = ctx.neg(d)
        d = ctx.mul(d, m[c][c])
        inv = ctx.inv(m[c][c])
        for i in range(c + 1, n):
            if not ctx.is_zero(m[i][c]):
                f = ctx.mul(m[i][c], inv)
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[c])]
    return d


def inverse(ctx, rows):
    n = len(rows)
    aug = [list(r) + [ctx.one if i == j else ctx.zero for j in range(n)] for i, r in enumerate(rows)]
    R, pivots = rref(ctx, aug, n)
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in R]


def complement_basis(ctx, sub, ambient, ncols):
    """Vectors of ``ambient`` extending a basis of span(sub) to span(sub + ambient).

    Used to pick representatives of a quotient space span(ambient)/span(sub).
    """
    chosen = []
    current = [list(v) for v in sub]
    base_rank = rank(ctx, current, ncols) if current else 0
    for v in ambient:
        trial = current + [list(v)]
        r = rank(ctx, trial, ncols)
        if r > base_rank:
            current = trial
            base_rank = r
            chosen.append(list(v))
    return chosen
