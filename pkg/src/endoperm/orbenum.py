"""Orbit-by-suborbit enumeration.

Enumerates the H-orbits of a big implicit G-set (points or vectors) through
a helper subgroup K <= H and a K-set quotient pi: points of an H-orbit are
visited chunk by chunk, one K-orbit at a time, but only the distinguished
points (the pi-fiber over each K-orbit's distinguished image point) are
retained.  A record is sealed once the certified stabilizer and the covered
count satisfy the majority condition 2 * covered * |S| > |H|, which pins
n_j = |H| / |S| exactly.

The stored fiber sets are canonical per K-orbit chunk, so two records of
the same H-orbit always share a stored point once both cover more than half
of it; that makes the pairwise disjointness test deterministic, while point
membership is tested by random H-walks (one-sided: a hit is a proof).
"""

import json
import random
from fractions import Fraction

import numpy as np

from . import gfmat
from .gfmat import FqMatrix, ModuleRep
from .permgrp import (GeneratedGroup, Permutation, RandomStream,
                      evaluate_word, group_from_json, load_word_json,
                      seed_mix, word_concat, word_inverse)


class MemoryBudgetExceeded(RuntimeError):
    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class HelperNotEquivariant(ValueError):
    pass


class NotCertifiedMember(ValueError):
    pass


# ---------------------------------------------------------------------------
# Domains: how points are represented, acted on, and hashed.

class PermutationDomain:
    """Points are integers 0..degree-1; actors are Permutations."""

    kind = "permutation"

    def __init__(self, degree):
        self.degree = degree

    def apply(self, x, actor):
        return actor.images[x]

    def key(self, x):
        return x

    def from_key(self, key):
        return key

    def identity(self):
        return Permutation.identity(self.degree)

    def point_bytes(self):
        return 12

    def sort_key(self, key):
        return (0, key)


class VectorDomain:
    """Points are byte-encoded F_p row vectors; actors are FqMatrix."""

    kind = "vector"

    def __init__(self, p, dim):
        self.p = p
        self.dim = dim

    def apply(self, x, actor):
        v = np.frombuffer(x, dtype=np.uint8).astype(np.int64)
        out = (FqMatrix(self.p, v.reshape(1, -1)) * actor).toarray()[0]
        return out.tobytes()

    def key(self, x):
        return x

    def from_key(self, key):
        return key

    def identity(self):
        return FqMatrix.identity(self.p, self.dim)

    def point_bytes(self):
        return gfmat.vector_bytes(self.p, self.dim)

    def sort_key(self, key):
        return (0, key)

    def encode(self, vec):
        return np.asarray(vec, dtype=np.uint8).tobytes()

    def decode(self, key):
        return np.frombuffer(key, dtype=np.uint8)


class ActionContext:
    """Everything the engine needs about one (G, H) scenario.

    The base point v1 must be fixed by every H-generator, so the G-orbit of
    v1 models the coset space of H.  The faithful H-action (a permutation
    group whose generators correspond index-by-index to the H-generators)
    certifies stabilizer orders; without it records carry uncertified
    lower bounds.
    """

    def __init__(self, domain, g_gens, h_gens, v1, *, h_words=None,
                 faithful_h=None, target_index=None, memory_limit=10 ** 7,
                 seed=0):
        self.domain = domain
        self.g_gens = list(g_gens)
        self.h_gens = list(h_gens)
        self.h_words = h_words
        self.v1 = domain.key(v1)
        self.faithful_h = faithful_h
        self.target_index = target_index
        self.memory_limit = memory_limit
        self.seed = seed
        self._g_inv = [g.inverse() for g in self.g_gens]
        self._h_inv = [h.inverse() for h in self.h_gens]
        for h in self.h_gens:
            if domain.apply(self.v1, h) != self.v1:
                raise ValueError("base point is not fixed by H")
        if faithful_h is not None:
            faithful_h._require_chain()
            if len(faithful_h.gens) != len(self.h_gens):
                raise ValueError(
                    "faithful H-action must list one generator per H-generator")
        self.h_order = faithful_h.order() if faithful_h else None

    def apply_g_word(self, x, word):
        for i, e in word:
            x = self.domain.apply(x, self.g_gens[i] if e > 0
                                  else self._g_inv[i])
        return x

    def apply_h_word(self, x, word):
        for i, e in word:
            x = self.domain.apply(x, self.h_gens[i] if e > 0
                                  else self._h_inv[i])
        return x

    def apply_element(self, x, el):
        return self.domain.apply(x, el)

    def h_word_perm(self, word):
        """Evaluate an H-word in the faithful permutation action."""
        return evaluate_word(word, self.faithful_h.gens,
                             Permutation.identity(self.faithful_h.degree))

    def g_stream(self, seed):
        return RandomStream(self.g_gens, seed,
                            identity=self.domain.identity())


# ---------------------------------------------------------------------------
# Helper setup: the K-orbit table on the quotient set Q.

class _KOrbit:
    __slots__ = ("dist", "length", "tree", "stab_words", "stab_order")

    def __init__(self, dist):
        self.dist = dist
        self.length = 0
        self.tree = {}       # q-key -> (k-gen index, parent q-key)
        self.stab_words = []  # words in K-generators
        self.stab_order = 1


class HelperSetup:
    """A helper subgroup K (words in the H-generators) together with a
    K-equivariant quotient map and the complete table of K-orbits on the
    quotient: distinguished points, stabilizer data, Schreier trees."""

    def __init__(self, ctx, k_words, quotient=None, q_limit=2 ** 20):
        self.ctx = ctx
        self.k_words = [tuple(w) for w in k_words]
        ident = ctx.domain.identity()
        self.k_gens = [evaluate_word(w, ctx.h_gens, ident)
                       for w in self.k_words]
        self._k_inv = [k.inverse() for k in self.k_gens]
        # expansion of each K-generator into H-letters
        self.k_h_words = [tuple(w) for w in self.k_words]
        if ctx.faithful_h is not None:
            perms = [ctx.h_word_perm(w) for w in self.k_words]
            self.k_group = GeneratedGroup(perms or [],
                                          ctx.faithful_h.degree)
            self.k_group.build_chain()
            self.k_order = self.k_group.order()
        else:
            self.k_group = None
            self.k_order = None
        self._setup_quotient(quotient)
        self._build_orbit_table(q_limit)

    # -- quotient -----------------------------------------------------------

    def _setup_quotient(self, quotient):
        ctx = self.ctx
        dom = ctx.domain
        if quotient is None:
            # identity map; Q is the point domain itself
            self.q_kind = "identity"
            if dom.kind == "vector" and ctx.domain.p ** ctx.domain.dim > 2 ** 20:
                raise ValueError(
                    "identity quotient needs an enumerable vector domain; "
                    "supply a projection")
            self.q_apply = [(g, gi) for gi, g in enumerate(self.k_gens)]
            self.project = lambda x: x
            self._q_gens = self.k_gens
            self._q_inv = self._k_inv
            self._q_points = self._domain_points()
            return
        if dom.kind == "permutation":
            mapping = list(quotient)
            if len(mapping) != dom.degree:
                raise ValueError("quotient mapping must cover the domain")
            nq = max(mapping) + 1
            q_gens = []
            for k in self.k_gens:
                images = [None] * nq
                for x in range(dom.degree):
                    q, qi = mapping[x], mapping[k.images[x]]
                    if images[q] is None:
                        images[q] = qi
                    elif images[q] != qi:
                        raise HelperNotEquivariant(
                            "mapping is not a map of K-sets")
                if any(i is None for i in images):
                    raise ValueError("quotient mapping is not surjective")
                q_gens.append(Permutation(images))
            self.q_kind = "permutation"
            self.project = lambda x: mapping[x]
            self._q_gens = q_gens
            self._q_inv = [g.inverse() for g in q_gens]
            self._q_points = list(range(nq))
            return
        # vector domain with a projection matrix
        proj = quotient
        if not isinstance(proj, FqMatrix):
            proj = FqMatrix(dom.p, proj)
        if proj.nrows != dom.dim:
            raise ValueError("projection must have one row per coordinate")
        dimw = proj.ncols
        if dom.p ** dimw > 2 ** 20:
            raise ValueError("quotient set too large to enumerate")
        q_gens = []
        for k in self.k_gens:
            kw = gfmat._solve(proj, k * proj)
            if k * proj != proj * kw:
                raise HelperNotEquivariant(
                    "projection does not intertwine the K-action")
            q_gens.append(kw)
        wdom = VectorDomain(dom.p, dimw)
        self.q_kind = "vector"
        self.w_domain = wdom
        self.project = lambda x, _p=proj, _d=dom: (
            (FqMatrix(_d.p, np.frombuffer(x, dtype=np.uint8)
                      .astype(np.int64).reshape(1, -1)) * _p)
            .toarray()[0].tobytes())
        self._q_gens = q_gens
        self._q_inv = [g.inverse() for g in q_gens]
        self._q_points = [wdom.encode(v) for v in
                          _all_vectors(dom.p, dimw)]

    def _domain_points(self):
        dom = self.ctx.domain
        if dom.kind == "permutation":
            return list(range(dom.degree))
        return [dom.encode(v) for v in _all_vectors(dom.p, dom.dim)]

    def _q_act(self, q, gi, inverse=False):
        gen = self._q_inv[gi] if inverse else self._q_gens[gi]
        if self.q_kind == "permutation" or (
                self.q_kind == "identity"
                and self.ctx.domain.kind == "permutation"):
            return gen.images[q]
        p = gen.p
        v = np.frombuffer(q, dtype=np.uint8).astype(np.int64)
        return (FqMatrix(p, v.reshape(1, -1)) * gen).toarray()[0].tobytes()

    # -- K-orbit table --------------------------------------------------------

    def _build_orbit_table(self, q_limit):
        if len(self._q_points) > q_limit:
            raise ValueError("quotient set exceeds the enumeration budget")
        self.orbit_of = {}
        self.orbits = []
        for q0 in self._q_points:
            if q0 in self.orbit_of:
                continue
            orb = _KOrbit(q0)
            oid = len(self.orbits)
            orb.tree[q0] = None
            order = [q0]
            self.orbit_of[q0] = oid
            qi = 0
            while qi < len(order):
                q = order[qi]
                qi += 1
                for gi in range(len(self.k_gens)):
                    img = self._q_act(q, gi)
                    if img not in orb.tree:
                        orb.tree[img] = (gi, q)
                        order.append(img)
                        self.orbit_of[img] = oid
            orb.length = len(order)
            self._collect_stabilizer(orb, order)
            self.orbits.append(orb)
        if self.k_order is not None:
            for orb in self.orbits:
                if self.k_order % orb.length:
                    raise AssertionError(
                        "K-orbit length does not divide |K|")

    def _collect_stabilizer(self, orb, order):
        """Schreier generators of Stab_K(distinguished point), as K-words."""
        if self.k_group is None or not self.k_gens:
            orb.stab_order = 1
            return
        target = self.k_order // orb.length
        if target == 1:
            orb.stab_order = 1
            return
        current = GeneratedGroup([], self.k_group.degree)
        current.build_chain()
        kept = []
        words = {orb.dist: ()}
        for q in order:
            if q not in words:
                gi, parent = orb.tree[q]
                words[q] = word_concat(words[parent], ((gi, 1),))
        for q in order:
            for gi in range(len(self.k_gens)):
                img = self._q_act(q, gi)
                w = word_concat(words[q], ((gi, 1),),
                                word_inverse(words[img]))
                perm = evaluate_word(
                    w, self.k_group.gens,
                    Permutation.identity(self.k_group.degree))
                if perm.is_identity() or perm in current:
                    continue
                kept.append(w)
                gens = [evaluate_word(x, self.k_group.gens,
                                      Permutation.identity(
                                          self.k_group.degree))
                        for x in kept]
                current = GeneratedGroup(gens, self.k_group.degree)
                current.build_chain()
                if current.order() == target:
                    orb.stab_words = kept
                    orb.stab_order = target
                    return
        orb.stab_words = kept
        orb.stab_order = current.order()
        if orb.stab_order != target:
            raise AssertionError("K-orbit stabilizer generation incomplete")

    def tree_word(self, q):
        """K-word w with distinguished . w = q."""
        orb = self.orbits[self.orbit_of[q]]
        out = []
        while orb.tree[q] is not None:
            gi, parent = orb.tree[q]
            out.append((gi, 1))
            q = parent
        return tuple(reversed(out))

    def expand_k_word(self, word):
        """Rewrite a K-word as an H-word."""
        out = []
        for i, e in word:
            w = self.k_h_words[i]
            out.extend(w if e > 0 else word_inverse(w))
        return tuple(out)

    def apply_k_word(self, x, word):
        dom = self.ctx.domain
        for i, e in word:
            x = dom.apply(x, self.k_gens[i] if e > 0 else self._k_inv[i])
        return x

    def stab_h_words(self, oid):
        """Fiber-stabilizer generators as H-words, cached per K-orbit."""
        orb = self.orbits[oid]
        return [self.expand_k_word(w) for w in orb.stab_words]


def _all_vectors(p, dim):
    total = p ** dim
    v = np.zeros(dim, dtype=np.uint8)
    out = []
    for idx in range(total):
        t = idx
        for i in range(dim):
            v[i] = t % p
            t //= p
        out.append(v.copy())
    return out


# ---------------------------------------------------------------------------

class _Node:
    __slots__ = ("parent", "edge", "_perm")

    def __init__(self, parent, edge):
        self.parent = parent   # parent stored key, or None at the root
        self.edge = edge       # H-word with parent . edge = this point
        self._perm = None      # cached faithful-H permutation from the rep


class OrbitRecord:
    """One H-orbit: representative, reaching word, certified length and
    stabilizer order, and the store of distinguished points with their
    Schreier back-references."""

    def __init__(self, rep_key, reach_word):
        self.index = None
        self.rep = rep_key
        self.reach_word = tuple(reach_word)
        self.length = None
        self.stab_order = None
        self.store = {}
        self.covered = 0
        self.chunks = 0
        self.pair = None
        self.certified = False

    @property
    def stored(self):
        return len(self.store)

    def saving_factor(self):
        return Fraction(self.covered, max(1, self.stored))

    def __repr__(self):
        return (f"OrbitRecord(n={self.length}, |H_j|={self.stab_order}, "
                f"stored={self.stored})")


def normalize_point(helper, x):
    """(z, k_word): z = x . k_word^{-1} lies in the fiber over the
    distinguished image; x = z . k_word."""
    q = helper.project(x)
    w = helper.tree_word(q)
    z = helper.apply_k_word(x, word_inverse(w))
    return z, w


def enumerate_suborbit(ctx, helper, v, reach_word=(), full=False):
    """Enumerate the H-orbit of v chunk by chunk, storing only fibers.

    Seals once 2 * covered * |S_acc| > |H| (then n_j = |H| / |S_acc| is
    certified by orbit-stabilizer), or on full coverage.  With full=True
    coverage always runs to the end.  Without a faithful H-action the
    record is completed by exhaustion and flagged uncertified.
    """
    dom = ctx.domain
    record = OrbitRecord(dom.key(v), reach_word)
    certify = ctx.faithful_h is not None and not full
    h_order = ctx.h_order
    if ctx.faithful_h is not None:
        ident = Permutation.identity(ctx.faithful_h.degree)
    stab_gens = []
    stab_group = None
    stab_order = 1

    z0, w0 = normalize_point(helper, record.rep)
    record.store[z0] = _Node(None, helper.expand_k_word(word_inverse(w0)))
    _store_fiber(ctx, helper, record, z0)
    queue = [z0]
    qi = 0
    while qi < len(queue):
        if len(record.store) > ctx.memory_limit:
            raise MemoryBudgetExceeded(
                f"stored {len(record.store)} points; covered {record.covered}",
                record)
        root = queue[qi]
        qi += 1
        # transiently enumerate the K-orbit chunk of this root
        chunk = {root: ()}
        order = [root]
        ci = 0
        while ci < len(order):
            y = order[ci]
            ci += 1
            for gi in range(len(helper.k_gens)):
                img = dom.apply(y, helper.k_gens[gi])
                if img not in chunk:
                    chunk[img] = word_concat(chunk[y], ((gi, 1),))
                    order.append(img)
        record.chunks += 1
        # expand across H-generators
        for y in order:
            u = helper.expand_k_word(chunk[y])
            for hi in range(len(ctx.h_gens)):
                x = dom.apply(y, ctx.h_gens[hi])
                z, wq = normalize_point(helper, x)
                edge = word_concat(u, ((hi, 1),),
                                   helper.expand_k_word(word_inverse(wq)))
                if z not in record.store:
                    record.store[z] = _Node(root, edge)
                    _store_fiber(ctx, helper, record, z)
                    queue.append(z)
                elif certify or full:
                    if ctx.faithful_h is None:
                        continue
                    loop = (_node_perm(ctx, record, root)
                            * ctx.h_word_perm(edge)
                            * _node_perm(ctx, record, z).inverse())
                    if loop.is_identity() or (
                            stab_group is not None and loop in stab_group):
                        continue
                    stab_gens.append(loop)
                    stab_group = GeneratedGroup(stab_gens,
                                                ctx.faithful_h.degree)
                    stab_group.build_chain()
                    stab_order = stab_group.order()
        if certify and 2 * record.covered * stab_order > h_order:
            record.length = h_order // stab_order
            record.stab_order = stab_order
            record.certified = True
            if record.covered > record.length:
                raise AssertionError("covered more points than orbit length")
            return record
    # full coverage reached
    record.length = record.covered
    if ctx.faithful_h is not None:
        record.stab_order = h_order // record.covered
        if h_order % record.covered:
            raise AssertionError("orbit length does not divide |H|")
        record.certified = True
    else:
        record.stab_order = None
        record.certified = False
    return record


def _node_perm(ctx, record, key):
    """Faithful-H permutation reaching a stored point from the
    representative (cached on the node)."""
    node = record.store[key]
    if node._perm is None:
        if node.parent is None:
            base = Permutation.identity(ctx.faithful_h.degree)
        else:
            base = _node_perm(ctx, record, node.parent)
        node._perm = base * ctx.h_word_perm(node.edge)
    return node._perm


def _store_fiber(ctx, helper, record, z):
    """Store the full fiber over the distinguished image: the orbit of z
    under the stabilizer in K of the distinguished point.

    Also counts the chunk as covered: the K-orbit chunk of z has exactly
    (quotient-orbit length) * (fiber size) points."""
    q = helper.project(z)
    oid = helper.orbit_of[q]
    words = helper.stab_h_words(oid)
    fiber = 1
    if words:
        frontier = [z]
        while frontier:
            y = frontier.pop()
            for w in words:
                img = ctx.apply_h_word(y, w)
                if img not in record.store:
                    record.store[img] = _Node(y, tuple(w))
                    frontier.append(img)
                    fiber += 1
    record.covered += helper.orbits[oid].length * fiber


def membership(ctx, helper, record, x, rng, budget=200):
    """Randomized membership: True is certain, otherwise 'unknown'.

    Tries the point itself, then random H-generator walks; any walk point
    whose normalization lands in the store proves membership.
    """
    y = ctx.domain.key(x)
    z, _ = normalize_point(helper, y)
    if z in record.store:
        return True
    nh = len(ctx.h_gens)
    if nh == 0:
        return "unknown"
    for _ in range(budget):
        y = ctx.domain.apply(y, ctx.h_gens[rng.randrange(nh)])
        z, _ = normalize_point(helper, y)
        if z in record.store:
            return True
    return "unknown"


def disjoint(rec_a, rec_b):
    """Deterministic disjointness: sealed records of one orbit share stored
    points (each covers a majority), so empty intersection is a proof."""
    small, big = ((rec_a.store, rec_b.store)
                  if len(rec_a.store) <= len(rec_b.store)
                  else (rec_b.store, rec_a.store))
    return not any(k in big for k in small)


def trace_word(ctx, helper, record, x):
    """H-word w with rep . w = x, for certified members only."""
    z, wq = normalize_point(helper, ctx.domain.key(x))
    if z not in record.store:
        raise NotCertifiedMember("point does not normalize into the store")
    parts = []
    key = z
    while key is not None:
        node = record.store[key]
        parts.append(node.edge)
        key = node.parent
    word = word_concat(*reversed(parts), helper.expand_k_word(wq))
    if ctx.apply_h_word(record.rep, word) != ctx.domain.key(x):
        raise AssertionError("traced word does not evaluate back to the point")
    return word


class OrbitPartition:
    def __init__(self, records, target_index):
        self.records = records
        self.target_index = target_index

    @property
    def total(self):
        return sum(r.length for r in self.records)

    @property
    def residual(self):
        return self.target_index - self.total

    def lengths(self):
        return [r.length for r in self.records]

    def pairing(self):
        return [r.pair for r in self.records]

    def report(self):
        return {
            "target_index": self.target_index,
            "total": self.total,
            "residual": self.residual,
            "orbits": [
                {
                    "j": r.index,
                    "pair": r.pair,
                    "n": r.length,
                    "stabilizer_order": r.stab_order,
                    "stored": r.stored,
                    "covered": r.covered,
                    "saving_factor": [r.saving_factor().numerator,
                                      r.saving_factor().denominator],
                    "certified": r.certified,
                    "reach_word": [[i + 1 if e > 0 else -(i + 1), 1]
                                   for i, e in r.reach_word],
                }
                for r in self.records
            ],
        }


def orbit_min_key(ctx, record, cap=10 ** 6):
    """Minimal point of the orbit (seed-independent canonical tiebreak)."""
    if record.length is not None and record.length > cap:
        return min(record.store)
    dom = ctx.domain
    seen = {record.rep}
    frontier = [record.rep]
    best = record.rep
    while frontier:
        nxt = []
        for y in frontier:
            for h in ctx.h_gens:
                img = dom.apply(y, h)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return min(seen, key=dom.sort_key)


def classify(ctx, helper, seed=0, probe_budget=10 ** 6, walk_budget=200):
    """Find the full H-orbit decomposition by random G-probes.

    Probes v1 . g for random g until the lengths sum to the target index;
    each new orbit's partner v1 . g^{-1} is classified immediately so the
    pairing is an involution.  Output ordering is canonical: the orbit of
    v1 first, then by (length, minimal orbit point), independent of seed.
    """
    if ctx.target_index is None:
        raise ValueError("classify needs the target index [G:H]")
    stream = ctx.g_stream(seed)
    rng = random.Random(seed_mix(seed, 0xC1A551F1))
    records = [enumerate_suborbit(ctx, helper, ctx.v1, ())]
    records[0].pair_rec = records[0]
    probes = 0

    def find(x):
        for rec in records:
            if membership(ctx, helper, rec, x, rng, walk_budget) is True:
                return rec
        return None

    def add_new(x, word):
        rec = enumerate_suborbit(ctx, helper, x, word)
        for other in records:
            if not disjoint(rec, other):
                return other, False
        records.append(rec)
        return rec, True

    while sum(r.length for r in records) < ctx.target_index \
            and probes < probe_budget:
        el, word = stream.next()
        probes += 1
        x = ctx.apply_element(ctx.v1, el)
        if find(x) is not None:
            continue
        rec, fresh = add_new(x, word)
        if not fresh:
            continue
        xinv = ctx.apply_element(ctx.v1, el.inverse())
        partner = find(xinv)
        if partner is None:
            partner, fresh2 = add_new(xinv, word_inverse(word))
        rec.pair_rec = partner
        partner.pair_rec = rec
    # canonical ordering and index assignment
    first, rest = records[0], records[1:]
    rest.sort(key=lambda r: (r.length, ctx.domain.sort_key(
        orbit_min_key(ctx, r))))
    ordered = [first] + rest
    for i, rec in enumerate(ordered):
        rec.index = i + 1
    for rec in ordered:
        rec.pair = rec.pair_rec.index if hasattr(rec, "pair_rec") else None
        if rec.pair is None:
            # never probed as a partner: locate v1 . reach^{-1}
            xinv = ctx.apply_g_word(ctx.v1, word_inverse(rec.reach_word))
            partner = next((r for r in ordered if membership(
                ctx, helper, r, xinv, rng, walk_budget) is True), None)
            rec.pair = partner.index if partner else None
    part = OrbitPartition(ordered, ctx.target_index)
    for rec in ordered:
        if rec.pair is not None:
            mate = ordered[rec.pair - 1]
            if mate.pair != rec.index:
                raise AssertionError("orbit pairing is not an involution")
            if mate.length != rec.length:
                raise AssertionError("paired orbits differ in length")
    return part


def probe_fixed_space(ctx, helper, partition, s_gens, target_length,
                      seed=0, probes=2000, walk_budget=200):
    """Hunt a new orbit representative inside the fixed points of S.

    Checks each fixed point v with an H-orbit of the target length by
    probing v . g for random g against the known records; a hit yields the
    reaching word v1 . (g_j h g^{-1}) = v.  Returns (v, word) or None.
    """
    dom = ctx.domain
    candidates = _fixed_points(ctx, s_gens)
    rng = random.Random(seed_mix(seed, 0xF17ED))
    stream = ctx.g_stream(seed + 1)
    for v in candidates:
        if _orbit_length_capped(ctx, v, target_length) != target_length:
            continue
        for _ in range(probes):
            el, gword = stream.next()
            x = ctx.apply_element(v, el)
            for rec in partition.records:
                if membership(ctx, helper, rec, x, rng, walk_budget) is True:
                    h_word = trace_word(ctx, helper, rec, x)
                    word = word_concat(rec.reach_word,
                                       _h_to_g(ctx, h_word),
                                       word_inverse(gword))
                    if ctx.apply_g_word(ctx.v1, word) != dom.key(v):
                        raise AssertionError(
                            "reaching word does not evaluate to the vector")
                    return v, word
    return None


def _h_to_g(ctx, h_word):
    if ctx.h_words is None:
        raise ValueError("need H-generator words in G to export this word")
    out = []
    for i, e in h_word:
        w = ctx.h_words[i]
        out.extend(w if e > 0 else word_inverse(w))
    return tuple(out)


def _fixed_points(ctx, s_gens):
    dom = ctx.domain
    if dom.kind == "permutation":
        return [x for x in range(dom.degree)
                if all(dom.apply(x, s) == x for s in s_gens)]
    rep = ModuleRep(dom.p, s_gens, dom.dim)
    basis = gfmat.fixed_space(rep)
    out = []
    for coeffs in _all_vectors(dom.p, basis.nrows):
        if not coeffs.any():
            continue
        v = (coeffs.astype(np.int64) @ basis.toarray().astype(np.int64)) \
            % dom.p
        out.append(dom.encode(v))
    return out


def _orbit_length_capped(ctx, v, cap):
    dom = ctx.domain
    seen = {dom.key(v)}
    frontier = [dom.key(v)]
    while frontier and len(seen) <= cap:
        nxt = []
        for y in frontier:
            for h in ctx.h_gens:
                img = dom.apply(y, h)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return len(seen)


def memory_estimate(ctx):
    """Naive full-orbit storage estimate in bytes (what the engine avoids)."""
    per = ctx.domain.point_bytes()
    total = None if ctx.target_index is None else ctx.target_index * per
    return {"bytes_per_point": per, "full_orbit_bytes": total}


# ---------------------------------------------------------------------------
# Scenario files

def load_scenario(data):
    """Build (ctx, helper) from a scenario dict; see README for the schema."""
    seed = data.get("seed", 0)
    budgets = data.get("budgets", {})
    if "group" in data:
        G = group_from_json(data["group"])
        dom = PermutationDomain(G.degree)
        g_gens = G.gens
        ident = Permutation.identity(G.degree)
    else:
        rep = gfmat.rep_from_json(data["matrix_group"])
        dom = VectorDomain(rep.p, rep.dim)
        g_gens = rep.actions
        ident = FqMatrix.identity(rep.p, rep.dim)
    h_words = [load_word_json(w) for w in data["h_words"]]
    h_gens = [evaluate_word(w, g_gens, ident) for w in h_words]
    faithful = None
    if "faithful_h" in data:
        faithful = group_from_json(data["faithful_h"])
        faithful.build_chain()
    if "base_point" in data:
        bp = data["base_point"]
        v1 = (bp - 1) if isinstance(bp, int) else dom.encode(bp["vector"])
    else:
        v1 = _find_base_point(dom, h_gens)
    ctx = ActionContext(
        dom, g_gens, h_gens, v1, h_words=h_words, faithful_h=faithful,
        target_index=data.get("index"),
        memory_limit=budgets.get("memory_points", 10 ** 7), seed=seed)
    k_words = [load_word_json(w) for w in data.get("k_words", [])]
    quotient = None
    if data.get("quotient"):
        qd = data["quotient"]
        if "mapping" in qd:
            quotient = [q - 1 for q in qd["mapping"]]
        else:
            quotient = FqMatrix(dom.p, qd["projection"])
    helper = HelperSetup(ctx, k_words, quotient,
                         q_limit=budgets.get("q_limit", 2 ** 20))
    return ctx, helper


def _find_base_point(dom, h_gens):
    if dom.kind == "permutation":
        fixed = [x for x in range(dom.degree)
                 if all(g.images[x] == x for g in h_gens)]
        if len(fixed) != 1:
            raise ValueError(
                f"need a unique H-fixed point, found {len(fixed)}; "
                "specify base_point")
        return fixed[0]
    rep = ModuleRep(dom.p, h_gens, dom.dim)
    basis = gfmat.fixed_space(rep)
    if basis.nrows != 1:
        raise ValueError(
            f"need a 1-dimensional H-fixed space, found {basis.nrows}; "
            "specify base_point")
    return basis.toarray()[0].tobytes()


def load_scenario_file(path):
    with open(path) as fh:
        return load_scenario(json.load(fh))
