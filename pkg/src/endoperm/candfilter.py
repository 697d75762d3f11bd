"""Character-theoretic filtering of candidates for the projective
indecomposable character of the trivial module.

The projective character is a sub-sum of the permutation character, so its
coefficient vector d lives in the box 0 <= d_i <= m_i with d_1 = 1; two
exact filters cut the box down: projective characters vanish on p-singular
classes, and psi(g)/|C_G(g)|_p must be an algebraic integer.  Also here:
the index-sum search used to pin down missing orbit lengths.
"""

import itertools
import json
from fractions import Fraction

from .quadfield import QuadraticNumber, RadicalSum


class OrdinaryCharTableG:
    """A (possibly partial) ordinary character table with p-singularity
    flags and centralizer orders supplied as data.

    classes: list of {"name", "centralizer", "p_singular"}; characters:
    mapping label -> list of QuadraticNumber values per class.  Character
    values outside Q and real quadratic fields are rejected at parse time.
    """

    def __init__(self, classes, characters):
        self.classes = classes
        self.characters = characters
        for label, values in characters.items():
            if len(values) != len(classes):
                raise ValueError(f"character {label} has wrong length")

    @classmethod
    def from_json(cls, data):
        classes = [{"name": c["name"],
                    "centralizer": c.get("centralizer"),
                    "p_singular": bool(c.get("p_singular", False))}
                   for c in data["classes"]]
        chars = {}
        for label, values in data["characters"].items():
            row = []
            for v in values:
                if isinstance(v, int):
                    row.append(QuadraticNumber(v))
                else:
                    q = QuadraticNumber.from_json(v)
                    row.append(q)
            chars[label] = row
        return cls(classes, chars)

    def singular_classes(self):
        return [i for i, c in enumerate(self.classes) if c["p_singular"]]

    def value(self, label, class_index):
        return self.characters[label][class_index]


class CandidateVector:
    """d_i coefficients of one candidate for the projective character."""

    def __init__(self, labels, coeffs):
        self.labels = list(labels)
        self.coeffs = tuple(coeffs)

    def __eq__(self, other):
        return (self.labels, self.coeffs) == (other.labels, other.coeffs)

    def __hash__(self):
        return hash((tuple(self.labels), self.coeffs))

    def as_dict(self):
        return dict(zip(self.labels, self.coeffs))

    def __repr__(self):
        return f"CandidateVector({self.as_dict()})"


def _class_sum(tbl, labels, coeffs, class_idx):
    acc = RadicalSum()
    for label, d in zip(labels, coeffs):
        if d:
            acc = acc + RadicalSum.from_quadratic(
                tbl.value(label, class_idx)).scale(Fraction(d))
    return acc


def p_part(n, p):
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def defect_integrality(values, centralizers, p):
    """Whether value(g) / |C_G(g)|_p is an algebraic integer for every
    class.  Rational values: exact p-part divisibility; quadratic values:
    componentwise in the ring of integers of the field.  Sums spreading
    over more than one radicand only pass the conservative integer
    componentwise test (soundness note: this can only keep, never drop, a
    true candidate)."""
    for val, cz in zip(values, centralizers):
        if cz is None:
            continue
        pk = p_part(cz, p)
        if pk == 1:
            continue
        if isinstance(val, QuadraticNumber):
            val = RadicalSum.from_quadratic(val)
        rads = [d for d in val.terms if d != 1]
        if not rads:
            q = val.terms.get(1, Fraction(0)) / pk
            if q.denominator != 1:
                return False
        elif len(rads) == 1:
            n = rads[0]
            scaled = QuadraticNumber(
                val.terms.get(1, Fraction(0)) / pk,
                val.terms.get(n, Fraction(0)) / pk, n)
            if not scaled.is_algebraic_integer():
                return False
        else:
            ok = all((c / pk).denominator == 1 for c in val.terms.values())
            if not ok:
                return False
    return True


def admissible_candidates(tbl, constituents, p, use_defect=True):
    """Exhaustive filter of the coefficient box.

    constituents: list of (label, multiplicity); the first must be the
    trivial character (its coefficient is pinned to 1).  Candidates must
    vanish exactly on every flagged p-singular class; when centralizer
    orders are supplied the defect-integrality filter runs as well.
    Returns (box size before filtering, surviving CandidateVectors).
    Missing class values make that constraint a warning, not a wrong
    answer: the output stays a superset.
    """
    labels = [c[0] for c in constituents]
    mults = [c[1] for c in constituents]
    if mults[0] != 1:
        raise ValueError("the trivial constituent must have multiplicity 1")
    singular = tbl.singular_classes()
    ranges = [range(1, 2)] + [range(0, m + 1) for m in mults[1:]]
    box = 1
    for rng in ranges[1:]:
        box *= len(rng)
    out = []
    centralizers = [c["centralizer"] for c in tbl.classes]
    for coeffs in itertools.product(*ranges):
        ok = True
        for ci in singular:
            if not _class_sum(tbl, labels, coeffs, ci).is_zero():
                ok = False
                break
        if ok and use_defect and any(c is not None for c in centralizers):
            values = [_class_sum(tbl, labels, coeffs, ci)
                      for ci in range(len(tbl.classes))]
            ok = defect_integrality(values, centralizers, p)
        if ok:
            out.append(CandidateVector(labels, coeffs))
    return box, out


def conjugation_closure(candidates, pairs=None):
    """Coordinate equalities holding across every surviving candidate.

    Reports, does not enforce: returns the list of index pairs (i, j) with
    d_i = d_j in all candidates, restricted to the supplied Galois pairs
    when given."""
    if not candidates:
        return []
    k = len(candidates[0].coeffs)
    if pairs is None:
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    out = []
    for i, j in pairs:
        if all(c.coeffs[i] == c.coeffs[j] for c in candidates):
            out.append((candidates[0].labels[i], candidates[0].labels[j]))
    return out


def partition_search(target, allowed, k):
    """All size-k multisets from `allowed` summing to target, each sorted
    ascending, the list itself in lexicographic order."""
    allowed = sorted(set(allowed))
    out = []

    def rec(start, left, k_left, acc):
        if k_left == 0:
            if left == 0:
                out.append(tuple(acc))
            return
        for idx in range(start, len(allowed)):
            v = allowed[idx]
            if v * k_left > left:
                break
            if left - v > allowed[-1] * (k_left - 1):
                continue
            acc.append(v)
            rec(idx, left - v, k_left - 1, acc)
            acc.pop()

    rec(0, target, k, [])
    return out


def candidates_to_jsonl(candidates):
    return "\n".join(json.dumps(c.as_dict(), sort_keys=True)
                     for c in candidates)
