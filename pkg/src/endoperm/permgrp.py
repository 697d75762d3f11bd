"""Permutation groups given by generators.

Groups carry a deterministic stabilizer chain (base and strong generating
set) built by the Schreier-Sims procedure, giving exact orders, membership
tests and point stabilizers.  Elements of a large ambient group are carried
around as words in its generators; seeded product-replacement streams supply
reproducible random elements together with the words producing them.

Points are 0-indexed internally and 1-indexed in all file formats.
"""

import json
import random


class Permutation:
    """A permutation of {0..n-1}, stored as the tuple of images.

    Acts on the right: x * p is p.images[x].
    """

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree, cycles):
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                img[a] = b
            if cyc:
                img[cyc[-1]] = cyc[0]
        return cls(img)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        oi = other.images
        return Permutation(oi[i] for i in self.images)

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def cycle_string(self):
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc, j = [i], self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(out) or "()"


def seed_mix(*parts):
    """Deterministic integer from integer parts, for seeding sub-streams."""
    acc = 0x9E3779B97F4A7C15
    for x in parts:
        acc = (acc * 0x100000001B3 + (int(x) & 0xFFFFFFFFFFFFFFFF) + 1) \
            % (1 << 61)
    return acc


# ---------------------------------------------------------------------------
# Words in generators: tuples of (generator index, +-1), 0-indexed.

def word_inverse(word):
    return tuple((i, -e) for i, e in reversed(word))


def word_concat(*words):
    out = []
    for w in words:
        out.extend(w)
    return tuple(out)


def evaluate_word(word, gens, identity=None):
    """Fold a word left to right over generators (permutations or matrices).

    Generators must support * and .inverse().  The empty word returns
    `identity` when supplied, else the identity permutation of gens[0].
    """
    acc = None
    for i, e in word:
        if not 0 <= i < len(gens):
            raise IndexError(f"generator index {i} out of range")
        g = gens[i] if e > 0 else gens[i].inverse()
        acc = g if acc is None else acc * g
    if acc is not None:
        return acc
    if identity is not None:
        return identity
    return Permutation.identity(gens[0].degree)


def load_word_json(data):
    """Words in files are [[genIndex, exp], ...] with 1-indexed generators."""
    out = []
    for i, e in data:
        if i == 0:
            raise ValueError("word generator indices are 1-indexed in files")
        idx = abs(i) - 1
        sign = 1 if i > 0 else -1
        if e < 0:
            e, sign = -e, -sign
        out.extend([(idx, sign)] * e)
    return tuple(out)


def dump_word_json(word):
    return [[i + 1 if e > 0 else -(i + 1), abs(e)] for i, e in word]


# ---------------------------------------------------------------------------

class RandomStream:
    """Product-replacement stream over a fixed generator list.

    Ten accumulator slots, 50 burn-in multiplications.  The seed is part of
    the construction so every randomized computation downstream is
    replayable.  Elements come back together with the word in the original
    generators that produces them.
    """

    SLOTS = 10
    BURN_IN = 50

    def __init__(self, gens, seed, identity=None):
        if not gens:
            raise ValueError("need at least one generator")
        self.gens = list(gens)
        self.seed = seed
        self.rng = random.Random(seed)
        self.slots = []
        self.words = []
        for k in range(self.SLOTS):
            i = k % len(gens)
            self.slots.append(gens[i])
            self.words.append(((i, 1),))
        self._identity = identity
        for _ in range(self.BURN_IN):
            self._step()

    def _step(self):
        rng = self.rng
        i = rng.randrange(self.SLOTS)
        j = rng.randrange(self.SLOTS - 1)
        if j >= i:
            j += 1
        invert = rng.randrange(2)
        other = self.slots[j].inverse() if invert else self.slots[j]
        oword = word_inverse(self.words[j]) if invert else self.words[j]
        self.slots[i] = self.slots[i] * other
        self.words[i] = word_concat(self.words[i], oword)
        return i

    def next(self):
        """Return (element, word) with element == evaluate_word(word, gens)."""
        i = self._step()
        return self.slots[i], self.words[i]


# ---------------------------------------------------------------------------

class GeneratedGroup:
    """A permutation group with an optional stabilizer chain."""

    def __init__(self, gens, degree=None):
        gens = [g for g in gens]
        if degree is None:
            if not gens:
                raise ValueError("degree required for the trivial group")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generators act on different domains")
        self.gens = gens
        self.degree = degree
        self.base = None
        self.strong = None
        self.transversals = None

    # -- chain construction ------------------------------------------------

    def build_chain(self, base_prefix=()):
        """Deterministic Schreier-Sims.

        Bottom-up completion: a level is verified once all its Schreier
        generators sift to the identity through the deeper levels; adding a
        residue as a new strong generator sends the scan back up.  Base
        points are first moved points in ascending order, so chains (and
        everything derived from them) are stable across runs.  An optional
        base prefix forces the leading base points, which is how point
        stabilizers are extracted.
        """
        self.base = list(base_prefix)
        self.strong = [g for g in self.gens if not g.is_identity()]
        self.transversals = [None] * len(self.base)
        for g in self.strong:
            self._cover(g)
        i = len(self.base) - 1
        while i >= 0:
            residue, lvl = self._check_level(i)
            if residue is None:
                i -= 1
            else:
                self._cover(residue)
                self.strong.append(residue)
                i = min(lvl, len(self.base) - 1)
        return self

    def _cover(self, g):
        """Extend the base so that g moves some base point."""
        if all(g.images[b] == b for b in self.base):
            moved = min(i for i, j in enumerate(g.images) if i != j)
            self.base.append(moved)
            self.transversals.append(None)

    def _gens_at(self, j):
        prefix = self.base[:j]
        return [g for g in self.strong
                if all(g.images[b] == b for b in prefix)]

    def _rebuild_transversal(self, i, gens):
        trans = {self.base[i]: Permutation.identity(self.degree)}
        frontier = [self.base[i]]
        while frontier:
            nxt = []
            for pt in frontier:
                rep = trans[pt]
                for s in gens:
                    img = s.images[pt]
                    if img not in trans:
                        trans[img] = rep * s
                        nxt.append(img)
            frontier = nxt
        self.transversals[i] = trans
        return trans

    def _check_level(self, i):
        """Verify level i; on failure return (residue, level it fixes to)."""
        gens = self._gens_at(i)
        trans = self._rebuild_transversal(i, gens)
        for pt in sorted(trans):
            rep = trans[pt]
            for s in gens:
                img = s.images[pt]
                schreier = rep * s * trans[img].inverse()
                if schreier.is_identity():
                    continue
                residue, lvl = self._strip(schreier, i + 1)
                if not residue.is_identity():
                    return residue, lvl
        return None, None

    def _strip(self, g, depth=0):
        for lvl in range(depth, len(self.base)):
            trans = self.transversals[lvl]
            if trans is None:
                return g, lvl
            img = g.images[self.base[lvl]]
            rep = trans.get(img)
            if rep is None:
                return g, lvl
            g = g * rep.inverse()
        return g, len(self.base)

    def _require_chain(self):
        if self.base is None:
            self.build_chain()

    # -- queries -----------------------------------------------------------

    def order(self):
        self._require_chain()
        n = 1
        for trans in self.transversals:
            n *= len(trans)
        return n

    def __contains__(self, perm):
        self._require_chain()
        if perm.degree != self.degree:
            return False
        res, _ = self._strip(perm)
        return res.is_identity()

    def membership(self, perm):
        return perm in self

    def orbit(self, point):
        """Orbit of a point under the generators, in BFS discovery order."""
        seen = {point}
        out = [point]
        i = 0
        while i < len(out):
            pt = out[i]
            i += 1
            for g in self.gens:
                img = g.images[pt]
                if img not in seen:
                    seen.add(img)
                    out.append(img)
        return out

    def stabilizer(self, point):
        """Full point stabilizer, with its own chain."""
        shifted = GeneratedGroup(self.gens, self.degree)
        shifted.build_chain(base_prefix=(point,))
        gens = [g for g in shifted.strong if g.images[point] == point]
        stab = GeneratedGroup(gens, self.degree)
        stab.build_chain()
        return stab

    def stabilizer_with_words(self, point):
        """Point stabilizer plus words in self.gens for its generators.

        Schreier generators from the orbit of the point, pruned to those
        that grow the subgroup; word lengths stay short because transversal
        words come from a BFS tree.
        """
        self._require_chain()
        target = self.order() // len(set(self.orbit(point)))
        words = {point: ()}
        order_pts = [point]
        i = 0
        while i < len(order_pts):
            pt = order_pts[i]
            i += 1
            for gi, g in enumerate(self.gens):
                img = g.images[pt]
                if img not in words:
                    words[img] = words[pt] + ((gi, 1),)
                    order_pts.append(img)
        kept_words = []
        kept_gens = []
        current = GeneratedGroup([], self.degree)
        current.build_chain()
        for pt in order_pts:
            for gi in range(len(self.gens)):
                w = word_concat(
                    words[pt], ((gi, 1),),
                    word_inverse(words[self.gens[gi].images[pt]]))
                el = evaluate_word(
                    w, self.gens, Permutation.identity(self.degree))
                if el.is_identity() or el in current:
                    continue
                kept_gens.append(el)
                kept_words.append(w)
                current = GeneratedGroup(kept_gens, self.degree)
                current.build_chain()
                if current.order() == target:
                    return current, kept_words
        if current.order() != target:
            raise RuntimeError("stabilizer generation incomplete")
        return current, kept_words

    def random_stream(self, seed):
        return RandomStream(self.gens, seed,
                            identity=Permutation.identity(self.degree))


def random_element(group, stream):
    """One product-replacement step; returns (Permutation, Word)."""
    return stream.next()


def closure_elements(gens, degree, limit=None):
    """Exhaustive closure of a generator set; brute-force oracle for orders."""
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if limit is not None and len(seen) > limit:
                        raise RuntimeError("closure exceeds limit")
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# Group files: {"degree": n, "generators": [[images, 1-indexed], ...]}

def group_from_json(data):
    degree = data["degree"]
    gens = []
    for images in data["generators"]:
        if len(images) != degree:
            raise ValueError("generator length does not match degree")
        if sorted(images) != list(range(1, degree + 1)):
            raise ValueError("generator images are not a 1-indexed bijection")
        gens.append(Permutation(i - 1 for i in images))
    return GeneratedGroup(gens, degree)


def group_to_json(group):
    return {
        "degree": group.degree,
        "generators": [[i + 1 for i in g.images] for g in group.gens],
    }


def load_group(path):
    with open(path) as fh:
        return group_from_json(json.load(fh))
