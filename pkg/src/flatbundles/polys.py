"""Dense univariate polynomials over a FieldCtx (raw coefficients, constant first)."""


def trim(ctx, a):
    a = list(a)
    while a and ctx.is_zero(a[-1]):
        a.pop()
    return a


def add(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero
    return trim(ctx, [ctx.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def sub(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero
    return trim(ctx, [ctx.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def mul(ctx, a, b):
    if not a or not b:
        return []
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if ctx.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
    return trim(ctx, out)


def scale(ctx, c, a):
    return trim(ctx, [ctx.mul(c, x) for x in a])


def divmod_(ctx, a, b):
    a = trim(ctx, a)
    b = trim(ctx, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ctx.zero] * max(len(a) - len(b) + 1, 0)
    inv = ctx.inv(b[-1])
    while len(a) >= len(b):
        c = ctx.mul(a[-1], inv)
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = ctx.sub(a[shift + i], ctx.mul(c, bi))
        a = trim(ctx, a)
    return trim(ctx, q), a


def monic(ctx, a):
    a = trim(ctx, a)
    if not a:
        return a
    return scale(ctx, ctx.inv(a[-1]), a)


def gcd(ctx, a, b):
    a, b = trim(ctx, a), trim(ctx, b)
    while b:
        a, b = b, divmod_(ctx, a, b)[1]
    return monic(ctx, a)


def deriv(ctx, a):
    return trim(ctx, [ctx.mul(ctx.from_int(i), a[i]) for i in range(1, len(a))])


def _pth_root_poly(ctx, a):
    p = ctx.char
    return trim(ctx, [ctx.pth_root(a[i]) for i in range(0, len(a), p)])


def radical(ctx, f):
    """Product of the distinct monic irreducible factors of f (perfect field)."""
    f = monic(ctx, f)
    if len(f) <= 1:
        return [ctx.one]
    d = deriv(ctx, f)
    if not d:
        return radical(ctx, _pth_root_poly(ctx, f))
    g = gcd(ctx, f, d)
    a = divmod_(ctx, f, g)[0]
    r = radical(ctx, g)
    # lcm(a, r)
    return monic(ctx, divmod_(ctx, mul(ctx, a, r), gcd(ctx, a, r))[0])


def is_squarefree(ctx, f):
    f = trim(ctx, f)
    if len(f) <= 1:
        return True
    d = deriv(ctx, f)
    if not d:
        return False
    return len(gcd(ctx, f, d)) == 1


def evaluate(ctx, a, x):
    acc = ctx.zero
    for c in reversed(a):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def format(ctx, a, var="x"):
    terms = []
    for d in range(len(a) - 1, -1, -1):
        if ctx.is_zero(a[d]):
            continue
        c = ctx.format(a[d])
        if d == 0:
            terms.append(c)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            terms.append(mono if ctx.is_one(a[d]) else f"({c}){mono}")
    return " + ".join(terms) if terms else "0"
