"""Exact splitting of the endomorphism ring over Q and real quadratic fields.

The regular representation (the intersection matrices) is cut into
simultaneous generalized eigenspaces of a generating set; each component is
a homogeneous component of the algebra and yields one Galois orbit of
irreducible characters.  Supported shapes: dimension 1 (rational), 2
(quadratic conjugate pair), m^2 (rational with multiplicity m), and 2m^2
(quadratic pair with multiplicity m).  Everything else raises a structured
error carrying the factor data; the arithmetic is exact throughout.
"""

import math
from fractions import Fraction

import numpy as np

from . import zpoly
from .quadfield import (QuadraticNumber, RadicalSum, left_nullspace,
                        mat_from_int, mat_mul, mat_trace, rref, solve_action,
                        squarefree_part)


class UnsupportedComponentError(ValueError):
    """Component shape outside {1, 2, m^2, 2m^2} or a non-real field."""

    def __init__(self, message, factors=None, dim=None):
        super().__init__(message)
        self.factors = factors
        self.dim = dim


# ---------------------------------------------------------------------------
# Exact characteristic polynomials (CRT over word-sized primes)

_CRT_PRIMES = None


def _crt_primes():
    global _CRT_PRIMES
    if _CRT_PRIMES is None:
        ps = []
        p = 2 ** 24
        while len(ps) < 120:
            p = zpoly._next_prime(p)
            ps.append(p)
        _CRT_PRIMES = ps
    return _CRT_PRIMES


def _charpoly_mod(A, p):
    """Faddeev-LeVerrier mod p (requires p > n)."""
    n = A.shape[0]
    Ap = np.mod(A, p).astype(np.int64)
    M = np.zeros((n, n), dtype=np.int64)
    coeffs = [1]
    ident = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        M = Ap @ ((M + coeffs[-1] * ident) % p) % p
        tr = int(np.trace(M)) % p
        c = (-tr * pow(k, -1, p)) % p
        coeffs.append(c)
    return coeffs


def char_poly(M):
    """Exact characteristic polynomial of an integer matrix.

    Monic of degree n, constant-first coefficient tuple.  Computed modulo
    enough word-sized primes to exceed the coefficient bound, then CRT
    lifted to symmetric representatives.
    """
    entries = getattr(M, "entries", M)
    A = np.array(entries, dtype=object)
    n = A.shape[0]
    if n == 0:
        return (1,)
    maxabs = max(1, max(abs(int(x)) for row in entries for x in row))
    # |c_k| <= C(n,k) (n maxabs)^k; bound everything by (2 n maxabs)^n
    bound = (2 * n * maxabs) ** n * 2
    Aint = np.array([[int(x) for x in row] for row in entries],
                    dtype=object)
    residues = []
    primes = []
    modulus = 1
    for p in _crt_primes():
        Ap = np.array([[int(x) % p for x in row] for row in entries],
                      dtype=np.int64)
        residues.append(_charpoly_mod(Ap, p))
        primes.append(p)
        modulus *= p
        if modulus > bound:
            break
    else:
        raise RuntimeError("prime pool exhausted for charpoly CRT")
    coeffs = []
    for k in range(n + 1):
        x = 0
        for p, res in zip(primes, residues):
            q = modulus // p
            x = (x + res[k] * q * pow(q, -1, p)) % modulus
        if x > modulus // 2:
            x -= modulus
        coeffs.append(x)
    # coeffs are [1, c1, ..., cn] for X^n + c1 X^{n-1} + ...; flip order
    poly = tuple(reversed(coeffs))
    if poly[-1] != 1:
        raise AssertionError("characteristic polynomial is not monic")
    return poly


class FactoredPoly:
    """Irreducible factorization over Z of a monic integer polynomial."""

    def __init__(self, poly, seed=1):
        self.poly = tuple(poly)
        unit, cont, facs = zpoly.factor(self.poly, seed=seed)
        if unit * cont != 1:
            raise ValueError("expected a monic polynomial with content 1")
        self.factors = facs

    def multiset(self):
        return sorted((f, m) for f, m in self.factors)

    def __repr__(self):
        parts = [f"({zpoly.poly_str(f)})^{m}" if m > 1
                 else f"({zpoly.poly_str(f)})" for f, m in self.factors]
        return " ".join(parts)


def factor_over_Z(poly, seed=1):
    return FactoredPoly(poly, seed=seed)


# ---------------------------------------------------------------------------
# Homogeneous components

class HomogeneousComponent:
    """A simultaneous generalized eigenspace of the generating matrices.

    factors: [(generator index j, irreducible factor, multiplicity)], one
    per generator used; basis: rational row basis inside Q^r.
    """

    def __init__(self, factors, basis):
        self.factors = factors
        self.basis = basis
        self.dim = len(basis)

    def __repr__(self):
        fs = ", ".join(f"P{j}:{zpoly.poly_str(f)}^{m}"
                       for j, f, m in self.factors)
        return f"HomogeneousComponent(dim={self.dim}, {fs})"


def _poly_of_int_matrix(P, poly, power=1):
    r = len(P)
    out = [[0] * r for _ in range(r)]
    pw = [[int(i == j) for j in range(r)] for i in range(r)]
    for c in poly:
        if c:
            for i in range(r):
                for j2 in range(r):
                    out[i][j2] += c * pw[i][j2]
        pw = _int_mat_mul(pw, P)
    total = out
    for _ in range(power - 1):
        total = _int_mat_mul(total, out)
    return total


def _int_mat_mul(A, B):
    r = len(A)
    return [[sum(A[i][t] * B[t][k] for t in range(r)) for k in range(r)]
            for i in range(r)]


def _intersect_rowspaces(U, V):
    """Basis of rowspace(U) meet rowspace(V), rows over Fraction."""
    if not U or not V:
        return []
    # x in rowspace(V)  <=>  x . Z = 0 for Z spanning the right nullspace
    from .quadfield import right_nullspace
    Z = right_nullspace(V)
    if not Z:
        return [list(r) for r in U]
    UZ = mat_mul(U, [[z[i] for z in Z] for i in range(len(Z[0]))])
    A = left_nullspace(UZ)
    if not A:
        return []
    return mat_mul(A, U)


class ComponentsNotHomogeneous(ValueError):
    """Generator kernels cut below the homogeneous components.

    The simultaneous generalized eigenspaces of a generating set are
    intersections of left ideals; they coincide with the homogeneous
    components exactly when their dimensions add up to r (the check the
    construction hinges on).  When multiplicities exceed one this can
    fail; the center route below always works.
    """


def homogeneous_components(gen_mats, r, seed=1):
    """Simultaneous generalized eigenspaces of the generating intersection
    matrices, with their factor data.

    gen_mats: list of (orbit index j, integer matrix).  The matrices must
    generate the full algebra, and the eigenspaces must tile (sum of
    dimensions r, which certifies they are the homogeneous components);
    otherwise ComponentsNotHomogeneous is raised and the caller should fall
    back to homogeneous_components_center.
    """
    comps = [HomogeneousComponent(
        [], [[Fraction(int(i == j)) for j in range(r)] for i in range(r)])]
    for j, P in gen_mats:
        entries = getattr(P, "entries", P)
        cp = char_poly(entries)
        facs = factor_over_Z(cp, seed=seed).factors
        kernels = []
        for f, m in facs:
            FM = _poly_of_int_matrix(entries, f, power=m)
            K = left_nullspace(mat_from_int(FM))
            kernels.append((f, m, K))
        refined = []
        for comp in comps:
            for f, m, K in kernels:
                inter = _intersect_rowspaces(comp.basis, K)
                if inter:
                    refined.append(HomogeneousComponent(
                        comp.factors + [(j, f, m)], inter))
        comps = refined
    total = sum(c.dim for c in comps)
    if total != r:
        raise ComponentsNotHomogeneous(
            f"generator eigenspaces cover dimension {total} != {r}")
    stacked = [row for c in comps for row in c.basis]
    if len(rref(stacked)[1]) != r:
        raise AssertionError("components are not linearly independent")
    comps.sort(key=lambda c: [(zpoly.deg(f), f) for _, f, _ in c.factors])
    return comps


def homogeneous_components_center(all_mats, r, seed=1):
    """Homogeneous components through the center of the algebra.

    Needs all r intersection matrices.  Central elements have two-sided
    kernels, so refining by the primary decompositions of their right
    multiplications always tiles and lands exactly on the homogeneous
    components.
    """
    Ps = [mat_from_int(getattr(P, "entries", P)) for P in all_mats]
    # left multiplications: L_i[j][k] = p_ijk = P_j[i][k]
    Ls = [[[Ps[j][i][k] for k in range(r)] for j in range(r)]
          for i in range(r)]
    stacked = [[Ps[j][i][k] - Ls[j][i][k] for j in range(r)
                for k in range(r)] for i in range(r)]
    center = left_nullspace(stacked)
    comps = [HomogeneousComponent(
        [], [[Fraction(int(i == j)) for j in range(r)] for i in range(r)])]
    for z in center:
        Rz = [[sum(z[t] * Ps[t][i][k] for t in range(r)) for k in range(r)]
              for i in range(r)]
        refined = []
        for comp in comps:
            C = solve_action(comp.basis, Rz)
            poly = _min_poly_fraction(C)
            _, _, facs = zpoly.factor(poly, seed=seed)
            if len(facs) == 1:
                refined.append(comp)
                continue
            for f, m in facs:
                FC = _eval_fraction_poly(C, f, m)
                K = left_nullspace(FC)
                if K:
                    refined.append(HomogeneousComponent(
                        comp.factors, mat_mul(K, comp.basis)))
        comps = refined
    total = sum(c.dim for c in comps)
    if total != r:
        raise AssertionError(f"center components cover {total} != {r}")
    comps.sort(key=lambda c: (c.dim, [[x for x in row] for row in c.basis]))
    return comps


def _min_poly_fraction(C):
    """Minimal polynomial of a rational matrix, as a primitive integer
    tuple (asserted monic over Z: the use sites only see algebraic-integer
    eigenvalues)."""
    from .quadfield import express_in_rows
    d = len(C)
    poly = (1,)
    for start in range(d):
        v = [Fraction(int(i == start)) for i in range(d)]
        if not any(_apply_fraction_poly(C, poly, v)):
            continue
        krylov = [v]
        while True:
            nxt = _vec_mat_fraction(krylov[-1], C)
            coeff = express_in_rows(krylov, nxt)
            if coeff is not None:
                loc = [-c for c in coeff] + [Fraction(1)]
                break
            krylov.append(nxt)
        den = 1
        for c in loc:
            den = den * c.denominator // math.gcd(den, c.denominator)
        iloc = zpoly.trim([int(c * den) for c in loc])
        if iloc[-1] != den:
            raise AssertionError("minimal polynomial is not monic over Q")
        if den != 1:
            raise AssertionError(
                "restricted minimal polynomial is not integral")
        g = zpoly.gcd(poly, iloc)
        poly = zpoly.exact_div(zpoly.mul(poly, iloc), g)
        if zpoly.deg(poly) == d:
            break
    return poly


def _vec_mat_fraction(v, C):
    d = len(C)
    return [sum(v[i] * C[i][k] for i in range(d)) for k in range(d)]


def _apply_fraction_poly(C, poly, v):
    out = [Fraction(0)] * len(v)
    pw = list(v)
    for c in poly:
        if c:
            out = [a + c * b for a, b in zip(out, pw)]
        pw = _vec_mat_fraction(pw, C)
    return out


def _eval_fraction_poly(C, f, power=1):
    d = len(C)
    out = [[Fraction(0)] * d for _ in range(d)]
    pw = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for c in f:
        if c:
            for i in range(d):
                for j2 in range(d):
                    out[i][j2] += c * pw[i][j2]
        pw = mat_mul(pw, C)
    total = out
    for _ in range(power - 1):
        total = mat_mul(total, out)
    return total


# ---------------------------------------------------------------------------
# Splitting one component into character rows

class CharRow:
    """One irreducible character of the endomorphism ring."""

    def __init__(self, values, mult, degree=None, conj=None, fitting=None,
                 ambiguous=False):
        self.values = list(values)
        self.mult = mult
        self.degree = degree
        self.conj = conj
        self.fitting = fitting
        self.ambiguous = ambiguous

    @property
    def field(self):
        for v in self.values:
            if v.b:
                return v.n
        return 1

    def conjugate_values(self):
        return [v.conjugate() for v in self.values]

    def to_json(self):
        return {
            "values": [v.to_json() for v in self.values],
            "mult": self.mult,
            "degree": self.degree,
            "conjugate_of": self.conj,
            "fitting": self.fitting,
            "ambiguous": self.ambiguous,
        }

    @classmethod
    def from_json(cls, data):
        return cls([QuadraticNumber.from_json(v) for v in data["values"]],
                   data["mult"], data.get("degree"),
                   data.get("conjugate_of"), data.get("fitting"),
                   data.get("ambiguous", False))

    def __repr__(self):
        return (f"CharRow(m={self.mult}, deg={self.degree}, "
                f"values={self.values[:4]}...)")


def _component_actions(comp, all_mats):
    B = comp.basis
    return [solve_action(B, mat_from_int(getattr(P, "entries", P)))
            for P in all_mats]


def split_component(comp, all_mats):
    """Character rows of one homogeneous component.

    A component that is rationally split (dimension m^2) gives one row of
    multiplicity m: the traces divided by m.  A component of dimension
    2 m^2 carrying a quadratic field gives a Galois-conjugate pair: it is
    cut over Q(sqrt(n)) by a conjugate factor f1 of the first restricted
    action whose minimal polynomial has an irreducible even-degree factor,
    and the traces on the cut (divided by m) are the values.  The row with
    positive radical part at its first irrational value comes first.
    Anything else raises UnsupportedComponentError with the factor data.
    """
    d = comp.dim
    actions = _component_actions(comp, all_mats)
    m = math.isqrt(d)
    if m * m == d:
        values = []
        ok = True
        for C in actions:
            tr = mat_trace(C)
            val = tr / m
            if val.denominator != 1:
                ok = False
                break
            values.append(QuadraticNumber(val))
        if ok:
            return [CharRow(values, m)]
    if d % 2 == 0 and math.isqrt(d // 2) ** 2 == d // 2:
        m = math.isqrt(d // 2)
        driver = _find_quadratic_driver(actions)
        if driver is None:
            raise UnsupportedComponentError(
                f"no quadratic driver found in component of dimension {d}",
                comp.factors, d)
        Cd, f = driver
        n, f1 = _quadratic_factor(f)
        Cq = [[QuadraticNumber(x) for x in row] for row in Cd]
        U = _stable_kernel(Cq, f1, d // 2)
        if U is None:
            raise UnsupportedComponentError(
                f"quadratic cut of {zpoly.poly_str(f)} does not reach "
                f"dimension {d // 2}", comp.factors, d)
        values = []
        for C in actions:
            Cq2 = [[QuadraticNumber(x) for x in row] for row in C]
            T = solve_action(U, Cq2)
            tr = mat_trace(T)
            val = tr / m
            values.append(val)
        row_plus = CharRow(values, m)
        row_minus = CharRow([v.conjugate() for v in values], m)
        lead = next((v for v in values if v.b), None)
        if lead is not None and lead.b < 0:
            row_plus, row_minus = row_minus, row_plus
        for v in row_plus.values:
            if not v.is_algebraic_integer():
                raise UnsupportedComponentError(
                    f"character value {v} is not an algebraic integer",
                    comp.factors, d)
        return [row_plus, row_minus]
    raise UnsupportedComponentError(
        f"component dimension {d} is neither m^2 nor 2m^2",
        comp.factors, d)


def _find_quadratic_driver(actions):
    """First restricted action with an irreducible even-degree minimal
    polynomial factor of degree 2 or 4."""
    for C in actions:
        mp = _min_poly_fraction(C)
        _, _, facs = zpoly.factor(mp)
        for f, _ in facs:
            if zpoly.deg(f) in (2, 4):
                return C, f
    return None


def _stable_kernel(Cq, f1, want):
    """ker f1(C)^e over the quadratic field, with e raised until the
    dimension stabilizes; None unless it stabilizes at `want`."""
    F = _poly_of_quad_matrix(Cq, f1)
    M = F
    prev = -1
    for _ in range(len(Cq)):
        U = left_nullspace(M)
        if len(U) == want:
            return U
        if len(U) == prev:
            return None
        prev = len(U)
        M = mat_mul(M, F)
    return None


def _poly_of_quad_matrix(C, poly, power=1):
    d = len(C)
    zero = QuadraticNumber(0)
    one = QuadraticNumber(1)
    out = [[zero] * d for _ in range(d)]
    pw = [[one if i == t else zero for t in range(d)] for i in range(d)]
    for c in poly:
        if c != 0:
            for i in range(d):
                for t in range(d):
                    out[i][t] = out[i][t] + pw[i][t] * c
        pw = mat_mul(pw, C)
    total = out
    for _ in range(power - 1):
        total = mat_mul(total, out)
    return total


def _quadratic_factor(f):
    """(n, f1): f1 an irreducible factor of f over Q(sqrt(n)) with the
    conjugate-pair property f = f1 * conj(f1); degree 2 and 4 supported."""
    if zpoly.deg(f) == 2:
        c0, c1, _ = [Fraction(c) for c in f]
        disc = c1 * c1 - 4 * c0
        if disc <= 0:
            raise UnsupportedComponentError(
                f"complex splitting field for {zpoly.poly_str(f)}")
        nsf, k = squarefree_part(int(disc * disc.denominator ** 2)
                                 if disc.denominator != 1 else int(disc))
        if disc.denominator != 1:
            raise UnsupportedComponentError("non-integral discriminant")
        if nsf == 1:
            raise UnsupportedComponentError(
                f"{zpoly.poly_str(f)} is reducible over Q")
        lam = QuadraticNumber(Fraction(-c1, 2), Fraction(k, 2), nsf)
        return nsf, [-lam, QuadraticNumber(1)]
    if zpoly.deg(f) == 4:
        return _split_quartic(f)
    raise UnsupportedComponentError(
        f"factor degree {zpoly.deg(f)} unsupported", [f])


def _split_quartic(f):
    """Factor an irreducible quartic into conjugate quadratics over a real
    quadratic field: f = (X^2 + a X + b)(X^2 + conj(a) X + conj(b))."""
    c0, c1, c2, c3, _ = [Fraction(c) for c in f]
    s = c3 / 2
    # alpha = s + x, beta = t + y with x = a sqrt(n), y = b sqrt(n);
    # matching coefficients: t = (c2 - s^2 + x^2)/2, x y = s t - c1/2,
    # y^2 = t^2 - c0, so u = x^2 satisfies u (t(u)^2 - c0) = (s t(u) - c1/2)^2
    half = Fraction(1, 2)
    # build the cubic in u with Fraction coefficients
    #   t(u) = t0 + u/2 with t0 = (c2 - s^2)/2
    t0 = (c2 - s * s) * half
    # lhs: u * ((t0 + u/2)^2 - c0);  rhs: (s (t0 + u/2) - c1/2)^2
    # expand to polynomial coefficients in u
    lhs = [Fraction(0), t0 * t0 - c0, t0, Fraction(1, 4)]
    rhs0 = s * t0 - c1 * half
    rhs = [rhs0 * rhs0, s * rhs0, s * s * Fraction(1, 4), Fraction(0)]
    poly = [a - b for a, b in zip(lhs, rhs)]
    den = 1
    for c in poly:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ipoly = zpoly.trim([int(c * den) for c in poly])
    candidates = []
    if zpoly.deg(ipoly) >= 1:
        _, _, facs = zpoly.factor(ipoly)
        for g, _ in facs:
            if zpoly.deg(g) == 1:
                root = Fraction(-g[0], g[1])
                if root > 0:
                    candidates.append(root)
    for u in candidates:
        sq = u.numerator * u.denominator
        nsf, k = squarefree_part(sq)
        if nsf == 1:
            continue
        x = QuadraticNumber(0, Fraction(k, u.denominator), nsf)
        t = t0 + u * half
        xy = s * t - c1 * half
        y = QuadraticNumber(xy) / x
        alpha = QuadraticNumber(s) + x
        beta = QuadraticNumber(t) + y
        if _verify_quartic_split(f, alpha, beta):
            return nsf, [beta, alpha, QuadraticNumber(1)]
    # x = 0 branch: alpha rational, beta irrational
    if s * (c2 - s * s) == c1:
        t = (c2 - s * s) * half
        y2 = t * t - c0
        if y2 > 0:
            sq = y2.numerator * y2.denominator
            nsf, k = squarefree_part(sq)
            if nsf != 1:
                y = QuadraticNumber(0, Fraction(k, y2.denominator), nsf)
                alpha = QuadraticNumber(s)
                beta = QuadraticNumber(t) + y
                if _verify_quartic_split(f, alpha, beta):
                    return nsf, [beta, alpha, QuadraticNumber(1)]
    raise UnsupportedComponentError(
        f"quartic {zpoly.poly_str(f)} does not split over a real quadratic "
        "field", [f])


def _verify_quartic_split(f, alpha, beta):
    ab, bb = alpha.conjugate(), beta.conjugate()
    # (X^2 + alpha X + beta)(X^2 + ab X + bb)
    coeffs = [
        beta * bb,
        alpha * bb + ab * beta,
        beta + bb + alpha * ab,
        alpha + ab,
        QuadraticNumber(1),
    ]
    return all(c == QuadraticNumber(x) for c, x in zip(coeffs, f))


# ---------------------------------------------------------------------------
# Fitting degrees, table assembly, verification

def fitting_degree(row, lengths, pairing=None):
    """Degree of the Fitting correspondent, from self-orthogonality:
    chi(1) = m n / sum_j phi(A_j*) phi(A_j) / n_j, asserted integral."""
    n = sum(lengths)
    r = len(lengths)
    if pairing is None:
        pairing = list(range(1, r + 1))
    acc = QuadraticNumber(0)
    for jj in range(r):
        v = row.values[jj]
        vstar = row.values[pairing[jj] - 1]
        acc = acc + (vstar * v) / lengths[jj]
    if acc.b != 0:
        raise ValueError(f"orthogonality sum {acc} is irrational")
    degree = Fraction(row.mult * n) / acc.as_fraction()
    if degree.denominator != 1 or degree <= 0:
        raise ValueError(f"Fitting degree {degree} is not a positive integer")
    return int(degree)


class EndoCharTable:
    """The split character table of the endomorphism ring."""

    def __init__(self, rows, lengths, pairing):
        self.rows = rows
        self.lengths = lengths
        self.pairing = pairing

    @property
    def r(self):
        return len(self.lengths)

    @property
    def n(self):
        return sum(self.lengths)

    def to_json(self):
        return {
            "lengths": self.lengths,
            "pairing": self.pairing,
            "rows": [row.to_json() for row in self.rows],
        }

    @classmethod
    def from_json(cls, data):
        return cls([CharRow.from_json(r) for r in data["rows"]],
                   data["lengths"], data["pairing"])


def build_table(gen_mats, all_mats, lengths, pairing, seed=1):
    """Full table: components, split rows, Fitting degrees, conjugate links.

    Components come from the generators' simultaneous generalized
    eigenspaces when those tile (the multiplicity-free and J4-like cases),
    else from the center of the algebra.  Rows are ordered component-major,
    positive radical part first inside each conjugate pair.
    """
    r = len(lengths)
    try:
        comps = homogeneous_components(gen_mats, r, seed=seed)
        rows = []
        for comp in comps:
            rows.extend(split_component(comp, all_mats))
    except (ComponentsNotHomogeneous, ValueError) as first_exc:
        # the generator eigenspaces can tile without being two-sided when
        # multiplicities exceed one; the center route settles it
        if len(all_mats) != r or isinstance(first_exc,
                                            UnsupportedComponentError):
            raise
        comps = homogeneous_components_center(all_mats, r, seed=seed)
        rows = []
        for comp in comps:
            rows.extend(split_component(comp, all_mats))
    for row in rows:
        row.degree = fitting_degree(row, lengths, pairing)
    for i, row in enumerate(rows):
        if row.conj is not None:
            continue
        if row.field == 1:
            continue
        cv = row.conjugate_values()
        for k in range(i + 1, len(rows)):
            if rows[k].conj is None and rows[k].values == cv:
                row.conj = k
                rows[k].conj = i
                break
    table = EndoCharTable(rows, lengths, pairing)
    report = verify_table(table)
    if not report["ok"]:
        raise AssertionError(f"table verification failed: {report}")
    return table


def verify_table(table):
    """Exact checks: orthogonality, pairing symmetry, the unique
    nonnegative row, and the dimension count sum(m * degree) = n."""
    rows, lengths, pairing = table.rows, table.lengths, table.pairing
    n = table.n
    r = table.r
    report = {"ok": True, "failures": []}

    def fail(msg):
        report["ok"] = False
        report["failures"].append(msg)

    for i, row in enumerate(rows):
        for jj in range(r):
            if row.values[pairing[jj] - 1] != row.values[jj]:
                fail(f"row {i}: value at paired orbit {jj + 1} differs")
                break
    for i in range(len(rows)):
        for k in range(i, len(rows)):
            acc = RadicalSum()
            for jj in range(r):
                vstar = RadicalSum.from_quadratic(
                    rows[i].values[pairing[jj] - 1])
                v = RadicalSum.from_quadratic(rows[k].values[jj])
                acc = acc + (vstar * v).scale(Fraction(1, lengths[jj]))
            acc = acc.scale(Fraction(1, n))
            if i == k:
                want = Fraction(rows[i].mult, rows[i].degree) \
                    if rows[i].degree else None
                if want is None:
                    continue
                if acc.is_zero() or acc.rational_value() != want:
                    fail(f"self-orthogonality fails for row {i}")
            elif not acc.is_zero():
                fail(f"rows {i} and {k} are not orthogonal")
    nonneg = [i for i, row in enumerate(rows)
              if all(v.is_rational() and v.a.denominator == 1 and v.a >= 0
                     for v in row.values)]
    if len(nonneg) != 1:
        fail(f"expected exactly one nonnegative row, found {nonneg}")
    else:
        triv = rows[nonneg[0]]
        if [v.as_fraction() for v in triv.values] != \
                [Fraction(x) for x in lengths]:
            fail("the nonnegative row does not list the orbit lengths")
    if all(row.degree for row in rows):
        total = sum(row.mult * row.degree for row in rows)
        if total != n:
            fail(f"sum of m * degree is {total} != {n}")
    for i, row in enumerate(rows):
        if row.conj is not None:
            partner = rows[row.conj]
            if partner.conj != i or \
                    partner.values != row.conjugate_values():
                fail(f"conjugate pairing broken at row {i}")
    return report
