"""Exact univariate polynomial arithmetic over Z and F_p.

Polynomials are tuples of int coefficients, constant term first, with no
trailing zeros.  Everything here is deterministic given the seed passed to
the factorization routines.

Factorization over Z is Zassenhaus-style: Yun squarefree decomposition,
modular factorization at a small prime chosen to minimize the factor count,
quadratic Hensel lifting past the coefficient bound, then subset
recombination in increasing cardinality (ample for the degrees that occur
here, which stay below 30).
"""

import math
import random
from fractions import Fraction


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def deg(p):
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                 for i in range(n)])


def neg(p):
    return tuple(-c for c in p)


def sub(p, q):
    return add(p, neg(q))


def mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p, c):
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def shift(p, k):
    return trim([0] * k + list(p))


def evaluate(p, x):
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def deriv(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def monic_divmod(p, q):
    """Division with remainder; q must be monic."""
    if not q or q[-1] != 1:
        raise ValueError("divisor must be monic")
    p = list(p)
    quo = [0] * max(0, len(p) - len(q) + 1)
    for i in range(len(p) - len(q), -1, -1):
        c = p[i + len(q) - 1]
        if c:
            quo[i] = c
            for j, b in enumerate(q):
                p[i + j] -= c * b
    return trim(quo), trim(p)


def divides(q, p):
    """Whether q divides p over Q (hence over Z up to content)."""
    if not q:
        return not p
    rem = [Fraction(c) for c in p]
    lead = Fraction(q[-1])
    for i in range(len(rem) - len(q), -1, -1):
        c = rem[i + len(q) - 1]
        if c:
            c /= lead
            for j, b in enumerate(q):
                rem[i + j] -= c * b
    return all(c == 0 for c in rem)


def exact_div(p, q):
    """Exact quotient p/q over Q, asserted to land in Z."""
    out = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    rem = [Fraction(c) for c in p]
    lead = Fraction(q[-1])
    for i in range(len(rem) - len(q), -1, -1):
        c = rem[i + len(q) - 1] / lead
        out[i] = c
        for j, b in enumerate(q):
            rem[i + j] -= c * b
    if any(c for c in rem):
        raise ValueError("division is not exact")
    res = []
    for c in out:
        if c.denominator != 1:
            raise ValueError("quotient is not integral")
        res.append(int(c))
    return trim(res)


def content(p):
    return math.gcd(*[abs(c) for c in p]) if p else 0


def primitive(p):
    if not p:
        return (), 0
    c = content(p)
    if p[-1] < 0:
        c = -c
    return tuple(a // c for a in p), c


def gcd(p, q):
    """Primitive gcd over Z (primitive-PRS, positive leading coefficient)."""
    p, _ = primitive(p)
    q, _ = primitive(q)
    if not p:
        return q
    if not q:
        return p
    if len(p) < len(q):
        p, q = q, p
    while q:
        # pseudo-remainder of p by q
        d = len(p) - len(q)
        r = list(scale(p, q[-1] ** (d + 1)))
        for i in range(d, -1, -1):
            c = r[i + len(q) - 1]
            if c % q[-1]:
                raise AssertionError("pseudo-division arithmetic error")
            c //= q[-1]
            for j, b in enumerate(q):
                r[i + j] -= c * b
        r = trim(r)
        p, q = q, primitive(r)[0]
    return p


def squarefree_decomposition(p):
    """Yun's algorithm: [(g_i, i)] with p = lc * prod g_i^i, g_i squarefree."""
    p, cont = primitive(p)
    if deg(p) <= 0:
        return []
    g = gcd(p, deriv(p))
    out = []
    w = exact_div(p, g)
    y = exact_div(deriv(p), g)
    i = 1
    while deg(w) > 0:
        z = sub(y, deriv(w))
        h = gcd(w, z)
        if deg(h) > 0:
            out.append((h, i))
        w = exact_div(w, h)
        y = exact_div(z, h)
        i += 1
    return out


# ---------------------------------------------------------------------------
# F_p[X]

def fp_trim(p, m):
    p = [c % m for c in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def fp_add(p, q, m):
    n = max(len(p), len(q))
    return fp_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                    for i in range(n)], m)


def fp_sub(p, q, m):
    n = max(len(p), len(q))
    return fp_trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)
                    for i in range(n)], m)


def fp_mul(p, q, m):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] = (out[i + j] + a * b) % m
    return fp_trim(out, m)


def fp_monic(p, m):
    if not p:
        return ()
    inv = pow(p[-1], -1, m)
    return fp_trim([c * inv for c in p], m)


def fp_divmod(p, q, m):
    if not q:
        raise ZeroDivisionError
    inv = pow(q[-1], -1, m)
    p = [c % m for c in p]
    quo = [0] * max(0, len(p) - len(q) + 1)
    for i in range(len(p) - len(q), -1, -1):
        c = (p[i + len(q) - 1] * inv) % m
        if c:
            quo[i] = c
            for j, b in enumerate(q):
                p[i + j] = (p[i + j] - c * b) % m
    return fp_trim(quo, m), fp_trim(p, m)


def fp_gcd(p, q, m):
    while q:
        p, q = q, fp_divmod(p, q, m)[1]
    return fp_monic(p, m)


def fp_powmod(p, e, f, m):
    out = (1,)
    p = fp_divmod(p, f, m)[1]
    while e:
        if e & 1:
            out = fp_divmod(fp_mul(out, p, m), f, m)[1]
        p = fp_divmod(fp_mul(p, p, m), f, m)[1]
        e >>= 1
    return out


def fp_deriv(p, m):
    return fp_trim([i * c for i, c in enumerate(p)][1:], m)


def fp_squarefree_part(f, p):
    """Squarefree part of monic f over F_p (handles p-th power collapse)."""
    f = fp_monic(f, p)
    if deg(f) <= 0:
        return f
    d = fp_deriv(f, p)
    if not d:
        # f is a p-th power: f(x) = g(x^p)
        g = fp_trim([f[i] for i in range(0, len(f), p)], p)
        return fp_squarefree_part(g, p)
    g = fp_gcd(f, d, p)
    w = fp_divmod(f, g, p)[0]
    if deg(g) == 0:
        return w
    rest = fp_squarefree_part(g, p)
    return fp_mul(w, fp_divmod(rest, fp_gcd(w, rest, p), p)[0], p)


def fp_distinct_degree(f, p):
    """[(product of irreducibles of degree d, d)] for squarefree monic f."""
    out = []
    h = (0, 1)  # x
    d = 0
    while deg(f) > 0:
        d += 1
        if 2 * d > deg(f):
            out.append((f, deg(f)))
            break
        h = fp_powmod(h, p, f, p)
        g = fp_gcd(fp_sub(h, (0, 1), p), f, p)
        if deg(g) > 0:
            out.append((g, d))
            f = fp_divmod(f, g, p)[0]
            h = fp_divmod(h, f, p)[1]
    return out


def fp_equal_degree(f, d, p, rng):
    """Cantor-Zassenhaus split of monic squarefree f into its degree-d parts."""
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = fp_trim([rng.randrange(p) for _ in range(n)], p)
        if deg(a) < 1:
            continue
        if p == 2:
            t = a
            acc = a
            for _ in range(d - 1):
                acc = fp_powmod(acc, 2, f, p)
                t = fp_add(t, acc, p)
            g = fp_gcd(t, f, p)
        else:
            g = fp_gcd(a, f, p)
            if 0 < deg(g) < n:
                pass
            else:
                b = fp_powmod(a, (p ** d - 1) // 2, f, p)
                g = fp_gcd(fp_sub(b, (1,), p), f, p)
        if 0 < deg(g) < n:
            left = fp_equal_degree(g, d, p, rng)
            right = fp_equal_degree(fp_divmod(f, g, p)[0], d, p, rng)
            return left + right


def fp_factor_squarefree(f, p, seed=1):
    rng = random.Random((seed * 1000003 + p) ^ len(f))
    out = []
    for g, d in fp_distinct_degree(fp_monic(f, p), p):
        out.extend(fp_equal_degree(g, d, p, rng))
    return sorted(out)


def fp_factor(f, p, seed=1):
    """Full factorization of f over F_p: (lc, [(monic irreducible, mult)])."""
    f = fp_trim(f, p)
    if deg(f) < 1:
        return (f[0] if f else 0), []
    lc = f[-1]
    f = fp_monic(f, p)
    out = {}
    while deg(f) > 0:
        sqf = fp_squarefree_part(f, p)
        for g in fp_factor_squarefree(sqf, p, seed):
            e = 0
            while True:
                q, r = fp_divmod(f, g, p)
                if r:
                    break
                f = q
                e += 1
            out[g] = out.get(g, 0) + e
    return lc, sorted(out.items())


# ---------------------------------------------------------------------------
# Hensel lifting and Zassenhaus

def _hensel_step(m, f, g, h, s, t):
    """One quadratic step: from f=gh, sg+th=1 (mod m) to the same mod m^2."""
    mm = m * m
    e = fp_trim(sub(f, mul(g, h)), mm)
    q, r = fp_divmod(fp_mul(s, e, mm), h, mm)
    g1 = fp_trim(add(add(g, fp_mul(t, e, mm)), mul(q, g)), mm)
    h1 = fp_add(h, r, mm)
    b = fp_trim(sub(add(mul(s, g1), mul(t, h1)), (1,)), mm)
    c, d = fp_divmod(fp_mul(s, b, mm), h1, mm)
    s1 = fp_sub(s, d, mm)
    t1 = fp_trim(sub(sub(t, mul(t, b)), mul(c, g1)), mm)
    return g1, h1, s1, t1


def _fp_ext_gcd(a, b, p):
    """(s, t) with s*a + t*b = 1 over F_p for coprime a, b."""
    r0, r1 = fp_trim(a, p), fp_trim(b, p)
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, fp_sub(s0, fp_mul(q, s1, p), p)
        t0, t1 = t1, fp_sub(t0, fp_mul(q, t1, p), p)
    inv = pow(r0[0], -1, p)
    return fp_trim([c * inv for c in s0], p), fp_trim([c * inv for c in t0], p)


def _hensel_lift_tree(f, factors, p, bound):
    """Lift monic f = prod(factors) mod p to mod p^k > bound; returns
    (p^k, lifted factors)."""
    if len(factors) == 1:
        m = p
        while m <= bound:
            m *= m
        return m, [fp_trim(f, m)]
    half = len(factors) // 2
    g = (1,)
    for q in factors[:half]:
        g = fp_mul(g, q, p)
    h = (1,)
    for q in factors[half:]:
        h = fp_mul(h, q, p)
    s, t = _fp_ext_gcd(g, h, p)
    m = p
    while m <= bound:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m *= m
    mg, left = _hensel_lift_tree(g, factors[:half], p, bound)
    mh, right = _hensel_lift_tree(h, factors[half:], p, bound)
    return m, [fp_trim(q, m) for q in left + right]


def _symmetric(p, m):
    return tuple(c - m if c > m // 2 else c for c in p)


def _mignotte(f):
    n = deg(f)
    norm = math.isqrt(sum(c * c for c in f)) + 1
    return (2 ** n) * norm * abs(f[-1])


def _factor_squarefree_monic(f, seed):
    """Zassenhaus for monic squarefree f over Z."""
    if deg(f) == 1:
        return [f]
    best = None
    tried = 0
    p = 2
    while tried < 5:
        p = _next_prime(p)
        fp = fp_trim(f, p)
        if deg(fp) != deg(f):
            continue
        if deg(fp_gcd(fp, fp_deriv(fp, p), p)) != 0:
            continue
        facs = fp_factor_squarefree(fp, p, seed)
        tried += 1
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if len(facs) <= 2:
            break
    p, modular = best
    if len(modular) == 1:
        return [f]
    bound = 2 * _mignotte(f)
    _, lifted = _hensel_lift_tree(f, modular, p, bound)
    m = p
    while m <= bound:
        m *= m
    out = []
    remaining = list(lifted)
    rest = f
    k = 1
    while 2 * k <= len(remaining):
        found = True
        while found and 2 * k <= len(remaining):
            found = False
            for subset in _subsets(len(remaining), k):
                cand = (1,)
                for i in subset:
                    cand = fp_mul(cand, remaining[i], m)
                cand = _symmetric(cand, m)
                if divides(cand, rest):
                    out.append(primitive(cand)[0])
                    rest = exact_div(rest, cand)
                    remaining = [q for i, q in enumerate(remaining)
                                 if i not in subset]
                    found = True
                    break
        k += 1
    if deg(rest) > 0:
        out.append(rest)
    return out


def _subsets(n, k):
    import itertools
    return itertools.combinations(range(n), k)


def _next_prime(p):
    p += 1
    while True:
        if p > 2 and p % 2 == 0:
            p += 1
            continue
        if all(p % d for d in range(3, math.isqrt(p) + 1, 2)) and p > 1:
            return p
        p += 1


def factor(f, seed=1):
    """Complete factorization over Z.

    Returns (unit, content, [(irreducible primitive poly, multiplicity)]),
    with unit * content * prod(poly^mult) == f and factors sorted by
    (degree, coefficients).
    """
    f = trim(f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    prim, cont = primitive(f)
    unit = -1 if cont < 0 else 1
    cont = abs(cont)
    if deg(prim) == 0:
        return unit, cont, []
    out = []
    for g, mult in squarefree_decomposition(prim):
        lc = g[-1]
        if lc != 1:
            # make monic by x -> x / lc, factor, and map factors back
            n = deg(g)
            monic = tuple(g[i] * lc ** (n - 1 - i) for i in range(n)) + (1,)
            for q in _factor_squarefree_monic(monic, seed):
                back = tuple(c * lc ** i for i, c in enumerate(q))
                out.append((primitive(back)[0], mult))
        else:
            for q in _factor_squarefree_monic(g, seed):
                out.append((q, mult))
    out.sort(key=lambda fm: (deg(fm[0]), fm[0]))
    return unit, cont, out


def poly_str(p, var="X"):
    if not p:
        return "0"
    terms = []
    for i in range(deg(p), -1, -1):
        c = p[i]
        if not c:
            continue
        if i == 0:
            terms.append(f"{c:+d}")
        else:
            x = var if i == 1 else f"{var}^{i}"
            if c == 1:
                terms.append(f"+{x}")
            elif c == -1:
                terms.append(f"-{x}")
            else:
                terms.append(f"{c:+d}{x}")
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s
