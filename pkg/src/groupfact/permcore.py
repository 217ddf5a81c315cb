"""Exact permutation-group computation at desk scale.

Conventions, fixed for the whole package:

* points are 0-based everywhere, including file formats;
* actions are left to right: the image of x under p is ``p.images[x]``,
  and ``compose(p, q)`` applies p first, then q.

The engine is a deterministic (non-randomized) Schreier-Sims stabilizer
chain with incremental sifting.  Base points are chosen as the smallest
moved point, except that a caller-supplied ``base_prefix`` is installed
first; that is what makes pointwise arc stabilizers and coset-action
kernels cheap to read off.  All orders are exact Python integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


# ---------------------------------------------------------------------------
# raw tuple helpers (hot paths work on plain tuples, not Permutation objects)

def _compose(p, q):
    # x -> q[p[x]]
    return tuple(q[x] for x in p)


def _inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _conjugate(p, x):
    # x^-1 * p * x, left-to-right
    return _compose(_compose(_inverse(x), p), x)


def _is_identity(p):
    return all(i == x for i, x in enumerate(p))


def _perm_order(p):
    n = 1
    q = p
    ident = tuple(range(len(p)))
    while q != ident:
        q = _compose(q, p)
        n += 1
    return n


class Permutation:
    """A permutation of {0, ..., degree-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        seen = [False] * n
        for x in images:
            if not isinstance(x, int) or not (0 <= x < n) or seen[x]:
                raise ValueError("images do not form a bijection of 0..%d" % (n - 1))
            seen[x] = True
        self.images = images

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, x):
        return self.images[x]

    def __mul__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch: %d vs %d" % (self.degree, other.degree))
        return Permutation(_compose(self.images, other.images))

    def inverse(self):
        return Permutation(_inverse(self.images))

    def conjugate_by(self, other):
        return Permutation(_conjugate(self.images, other.images))

    def is_identity(self):
        return _is_identity(self.images)

    def order(self):
        return _perm_order(self.images)

    def cycles(self, include_fixed=False):
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "Permutation(id/%d)" % self.degree
        return "Permutation(%s)" % "".join("(%s)" % " ".join(map(str, c)) for c in cyc)


def identity(degree):
    return Permutation(range(degree))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: x goes through p, then q."""
    return p * q


def from_cycles(degree, cycles):
    images = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
    return Permutation(images)


# ---------------------------------------------------------------------------
# stabilizer chain

class _Level:
    __slots__ = ("point", "gens", "transversal", "inv")

    def __init__(self, point, ident):
        self.point = point
        self.gens = []            # S_i: all strong generators fixing base[:i]
        self.transversal = {point: ident}   # orbit point -> rep u with u[point_of_level] = that point
        self.inv = {point: ident}

    def close_orbit(self, ident):
        # BFS in insertion order; deterministic given gens order
        queue = list(self.transversal)
        i = 0
        while i < len(queue):
            p = queue[i]
            i += 1
            u = self.transversal[p]
            for g in self.gens:
                p2 = g[p]
                if p2 not in self.transversal:
                    u2 = _compose(u, g)
                    self.transversal[p2] = u2
                    self.inv[p2] = _inverse(u2)
                    queue.append(p2)


class StabilizerChain:
    """Base and strong generating set with per-level transversals.

    ``levels[i]`` holds the orbit of ``base[i]`` under the subgroup fixing
    ``base[:i]`` pointwise.  The product of transversal sizes is the group
    order; membership is tested by sifting.
    """

    def __init__(self, generators, degree, base_prefix=()):
        self.degree = degree
        self._ident = tuple(range(degree))
        self.base = []
        self.levels = []
        self._prefix = [b for b in base_prefix]
        for b in self._prefix:
            self._append_level(b)
        gens = []
        seen = set()
        for g in generators:
            t = g.images if isinstance(g, Permutation) else tuple(g)
            if len(t) != degree:
                raise ValueError("generator degree mismatch")
            if t != self._ident and t not in seen:
                seen.add(t)
                gens.append(t)
        for t in gens:
            self._incorporate(t)

    # -- construction internals

    def _append_level(self, point):
        self.base.append(point)
        self.levels.append(_Level(point, self._ident))

    def _pick_new_point(self, perm):
        for b in self._prefix:
            if b not in self.base and perm[b] != b:
                return b
        return min(x for x in range(self.degree) if perm[x] != x)

    def _sift_tuple(self, perm, start=0):
        """Returns (residue, level) where level is the first failure."""
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            x = perm[lvl.point]
            if x == lvl.point:
                continue
            u_inv = lvl.inv.get(x)
            if u_inv is None:
                return perm, i
            perm = _compose(perm, u_inv)
        return perm, len(self.levels)

    def _install(self, t, lo):
        """Add strong generator t to the nested sets S_lo .. S_m, where m is
        the deepest level whose base prefix t fixes; returns m."""
        if all(t[b] == b for b in self.base):
            self._append_level(self._pick_new_point(t))
        m = lo
        while m < len(self.base) and t[self.base[m]] == self.base[m]:
            m += 1
        for lev in range(lo, m + 1):
            self.levels[lev].gens.append(t)
        return m

    def _incorporate(self, perm):
        if self.contains_tuple(perm):
            return
        m = self._install(perm, 0)
        self._verify_down_from(m)

    def _verify_down_from(self, start):
        """Re-verify levels start, start-1, ..., 0.

        On a failed Schreier generator at level i, its residue is installed
        into S_{i+1}..S_j (j = the level whose base point it moves) and
        verification jumps back down to j, in the usual deepest-first style.
        """
        i = start
        while i >= 0:
            if i >= len(self.levels):
                i -= 1
                continue
            lvl = self.levels[i]
            lvl.close_orbit(self._ident)
            failed = False
            orbit_points = list(lvl.transversal)
            for p in orbit_points:
                u = lvl.transversal[p]
                for g in lvl.gens:
                    p2 = g[p]
                    schreier = _compose(_compose(u, g), lvl.inv[p2])
                    if _is_identity(schreier):
                        continue
                    residue, _ = self._sift_tuple(schreier, i + 1)
                    if _is_identity(residue):
                        continue
                    j = self._install(residue, i + 1)
                    i = j
                    failed = True
                    break
                if failed:
                    break
            if not failed:
                i -= 1

    # -- queries

    def order(self):
        n = 1
        for lvl in self.levels:
            n *= len(lvl.transversal)
        return n

    def contains_tuple(self, perm):
        residue, _ = self._sift_tuple(perm)
        return _is_identity(residue)

    def sift(self, perm):
        t = perm.images if isinstance(perm, Permutation) else tuple(perm)
        residue, level = self._sift_tuple(t)
        return Permutation(residue), level

    def strong_generators_fixing(self, k):
        """Strong generators of the subgroup fixing base[:k] pointwise."""
        if k >= len(self.levels):
            return []
        return list(self.levels[k].gens)

    def random_tuple(self, rng):
        t = self._ident
        for lvl in self.levels:
            reps = list(lvl.transversal.values())
            t = _compose(reps[rng.randrange(len(reps))], t)
        return t

    def canonical_coset_rep(self, perm):
        """Canonical representative of (this group) * perm.

        Two elements of the same right coset map to the same output; the
        representative is the one sending each base point, in order, to the
        smallest point available within the coset.
        """
        t = perm.images if isinstance(perm, Permutation) else tuple(perm)
        for lvl in self.levels:
            if len(lvl.transversal) > 1:
                best_p = None
                best_img = None
                for p in lvl.transversal:
                    img = t[p]
                    if best_img is None or img < best_img:
                        best_img = img
                        best_p = p
                if best_p != lvl.point:
                    t = _compose(lvl.transversal[best_p], t)
        return t

    def elements(self, limit=None):
        """All elements, as tuples, by folding transversals (no dedup needed).

        Sifting factors every element as u_{m-1} * ... * u_1 * u_0 with u_i
        drawn from the level-i transversal and deeper factors on the left, so
        the fold left-multiplies each successive level's representatives.
        """
        total = self.order()
        if limit is not None and total > limit:
            raise ValueError("group order %d exceeds element limit %d" % (total, limit))
        out = [self._ident]
        for lvl in self.levels:
            reps = list(lvl.transversal.values())
            out = [_compose(u, t) for u in reps for t in out]
        return out


# ---------------------------------------------------------------------------
# permutation groups

class PermGroup:
    """A finite permutation group given by generators.

    The stabilizer chain is built lazily and cached; the group is immutable
    afterwards, so instances are safe to share.
    """

    def __init__(self, generators, degree=None):
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            gens.append(g)
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generating set")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("degree mismatch among generators")
        self.degree = degree
        self.generators = tuple(g for g in gens if not g.is_identity())
        self._chain = None
        self._chains_prefixed = {}

    # -- chain plumbing

    @property
    def chain(self):
        if self._chain is None:
            self._chain = StabilizerChain(self.generators, self.degree)
        return self._chain

    def chain_with_base(self, base_prefix):
        key = tuple(base_prefix)
        c = self._chains_prefixed.get(key)
        if c is None:
            c = StabilizerChain(self.generators, self.degree, base_prefix=key)
            self._chains_prefixed[key] = c
        return c

    def order(self):
        return self.chain.order()

    def contains(self, p):
        if isinstance(p, Permutation):
            if p.degree != self.degree:
                raise ValueError("degree mismatch")
            p = p.images
        elif len(p) != self.degree:
            raise ValueError("degree mismatch")
        return self.chain.contains_tuple(tuple(p))

    def is_subgroup(self, other: "PermGroup"):
        """True when self <= other (all generators sift in other's chain)."""
        return all(other.contains(g) for g in self.generators)

    def random_element(self, rng):
        return Permutation(self.chain.random_tuple(rng))

    def elements(self, limit=2_000_000):
        return [Permutation(t) for t in self.chain.elements(limit=limit)]

    # -- orbits and transitivity

    def orbit(self, x):
        if not (0 <= x < self.degree):
            raise ValueError("point %d out of range" % x)
        seen = {x}
        queue = [x]
        gens = [g.images for g in self.generators]
        i = 0
        while i < len(queue):
            p = queue[i]
            i += 1
            for g in gens:
                p2 = g[p]
                if p2 not in seen:
                    seen.add(p2)
                    queue.append(p2)
        return seen

    def orbits(self):
        left = set(range(self.degree))
        out = []
        while left:
            x = min(left)
            orb = self.orbit(x)
            out.append(sorted(orb))
            left -= orb
        return out

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree if self.degree else True

    def is_k_transitive(self, k):
        """Exact k-transitivity via iterated point stabilizers."""
        if self.degree < k:
            return False
        pts = []
        g = self
        for i in range(k):
            remaining = [x for x in range(self.degree) if x not in pts]
            orb = g.orbit(remaining[0])
            if not all(x in orb for x in remaining):
                return False
            pts.append(remaining[0])
            g = self.pointwise_stabilizer(pts)
        return True

    def pointwise_stabilizer(self, points):
        chain = self.chain_with_base(points)
        k = 0
        for i, b in enumerate(chain.base):
            if b in points:
                k = i + 1
            else:
                break
        gens = chain.strong_generators_fixing(k)
        return PermGroup([Permutation(t) for t in gens], self.degree)

    # -- cosets

    def coset_reps(self, h: "PermGroup", limit=None):
        """Canonical right-coset representatives of h in self (BFS order)."""
        if not h.is_subgroup(self):
            raise ValueError("h is not a subgroup")
        hchain = h.chain
        start = hchain.canonical_coset_rep(tuple(range(self.degree)))
        reps = [start]
        index = {start: 0}
        gens = [g.images for g in self.generators]
        i = 0
        while i < len(reps):
            r = reps[i]
            i += 1
            for g in gens:
                r2 = hchain.canonical_coset_rep(_compose(r, g))
                if r2 not in index:
                    index[r2] = len(reps)
                    reps.append(r2)
                    if limit is not None and len(reps) > limit:
                        raise ValueError("coset index exceeds bound %d" % limit)
        return reps, index

    def coset_action(self, h: "PermGroup"):
        """Permutation image of self on the right cosets of h.

        Returns (image group, list of canonical coset representative tuples).
        The kernel of the action is core(self, h).
        """
        reps, index = self.coset_reps(h)
        hchain = h.chain
        image_gens = []
        for g in self.generators:
            gi = g.images
            images = [index[hchain.canonical_coset_rep(_compose(r, gi))] for r in reps]
            image_gens.append(Permutation(images))
        return PermGroup(image_gens, len(reps)), reps

    def core(self, h: "PermGroup"):
        """Largest normal subgroup of self inside h (kernel of the coset action)."""
        reps, index = self.coset_reps(h)
        m = len(reps)
        hchain = h.chain
        combined = []
        for g in self.generators:
            gi = g.images
            tail = tuple(self.degree + index[hchain.canonical_coset_rep(_compose(r, gi))]
                         for r in reps)
            combined.append(Permutation(gi + tail))
        prefix = tuple(range(self.degree, self.degree + m))
        chain = StabilizerChain(combined, self.degree + m, base_prefix=prefix)
        k = 0
        for i, b in enumerate(chain.base):
            if b >= self.degree:
                k = i + 1
            else:
                break
        gens = [Permutation(t[: self.degree]) for t in chain.strong_generators_fixing(k)]
        return PermGroup(gens, self.degree)

    def normalizer(self, m: "PermGroup", index_bound=200_000):
        """N_self(m) by scanning a canonical transversal of m in self."""
        if not m.is_subgroup(self):
            raise ValueError("m is not a subgroup")
        reps, _ = self.coset_reps(m, limit=index_bound)
        mgens = [g.images for g in m.generators]
        keep = []
        for r in reps:
            rinv = _inverse(r)
            ok = True
            for s in mgens:
                if not m.chain.contains_tuple(_compose(_compose(rinv, s), r)):
                    ok = False
                    break
            if ok:
                keep.append(Permutation(r))
        return PermGroup(list(m.generators) + keep, self.degree)

    def conjugate(self, x: Permutation):
        return PermGroup([g.conjugate_by(x) for g in self.generators], self.degree)

    # -- derived series and friends

    def derived_subgroup(self):
        comms = []
        seen = set()
        for a in self.generators:
            for b in self.generators:
                c = _compose(_compose(_inverse(a.images), _inverse(b.images)),
                             _compose(a.images, b.images))
                if not _is_identity(c) and c not in seen:
                    seen.add(c)
                    comms.append(c)
        # normal closure under self
        gens = list(comms)
        outer = [g.images for g in self.generators]
        while True:
            chain = StabilizerChain([Permutation(t) for t in gens], self.degree)
            new = None
            for w in list(gens):
                for g in outer:
                    c = _conjugate(w, g)
                    if not chain.contains_tuple(c):
                        new = c
                        break
                if new:
                    break
            if new is None:
                return PermGroup([Permutation(t) for t in gens], self.degree)
            gens.append(new)

    def derived_series(self, max_len=None):
        series = [self]
        if max_len is None:
            max_len = max(2, self.order().bit_length() + 1)
        while len(series) <= max_len:
            d = series[-1].derived_subgroup()
            if d.order() == series[-1].order():
                break
            series.append(d)
            if d.order() == 1:
                break
        return series

    def is_solvable(self):
        return self.derived_series()[-1].order() == 1

    def is_perfect(self):
        return self.order() > 1 and self.derived_subgroup().order() == self.order()

    def derived_length(self):
        s = self.derived_series()
        return len(s) - 1 if s[-1].order() == 1 else None

    def is_trivial(self):
        return self.order() == 1

    def normal_closure(self, elts):
        gens = [p.images if isinstance(p, Permutation) else tuple(p) for p in elts]
        gens = [t for t in gens if not _is_identity(t)]
        outer = [g.images for g in self.generators]
        while True:
            chain = StabilizerChain([Permutation(t) for t in gens], self.degree)
            new = None
            for w in list(gens):
                for g in outer:
                    c = _conjugate(w, g)
                    if not chain.contains_tuple(c):
                        new = c
                        break
                if new:
                    break
            if new is None:
                return PermGroup([Permutation(t) for t in gens], self.degree)
            gens.append(new)

    def is_simple(self, element_limit=20_000):
        """Exact simplicity certificate by normal closures of class representatives."""
        n = self.order()
        if n == 1:
            return False
        tab = _ElementTable(self, element_limit)
        for rep in tab.class_reps():
            t = tab.elements[rep]
            if _is_identity(t):
                continue
            if self.normal_closure([t]).order() != n:
                return False
        return True

    def intersection_order_brute(self, other: "PermGroup", limit=5000):
        """|self ∩ other| by counting; self must have at most `limit` elements."""
        if self.order() > limit:
            raise ValueError("group too large for brute intersection (order %d)" % self.order())
        cnt = 0
        for t in self.chain.elements():
            if other.chain.contains_tuple(t):
                cnt += 1
        return cnt


# ---------------------------------------------------------------------------
# element table: indexes all elements of a small group, with conjugation maps

class _ElementTable:
    def __init__(self, group: PermGroup, limit):
        n = group.order()
        if n > limit:
            raise ValueError("group order %d exceeds bound %d" % (n, limit))
        self.group = group
        ident = tuple(range(group.degree))
        gens = [g.images for g in group.generators]
        elements = [ident]
        index = {ident: 0}
        i = 0
        while i < len(elements):
            t = elements[i]
            i += 1
            for g in gens:
                t2 = _compose(t, g)
                if t2 not in index:
                    index[t2] = len(elements)
                    elements.append(t2)
        assert len(elements) == n
        self.elements = elements
        self.index = index
        self.inv = [index[_inverse(t)] for t in elements]
        self.gen_indices = [index[g] for g in gens]
        # conjugation maps x -> g^-1 x g, one per generator
        self.conj_maps = []
        for g in gens:
            ginv = _inverse(g)
            self.conj_maps.append(
                [index[_compose(_compose(ginv, t), g)] for t in elements])
        self._orders = None
        self._classes = None

    def mul(self, i, j):
        return self.index[_compose(self.elements[i], self.elements[j])]

    def element_order(self, i):
        if self._orders is None:
            self._orders = [None] * len(self.elements)
        if self._orders[i] is None:
            self._orders[i] = _perm_order(self.elements[i])
        return self._orders[i]

    def class_of(self, i):
        seen = {i}
        queue = [i]
        k = 0
        while k < len(queue):
            x = queue[k]
            k += 1
            for cm in self.conj_maps:
                y = cm[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def class_reps(self):
        if self._classes is None:
            left = set(range(len(self.elements)))
            reps = []
            while left:
                x = min(left)
                cls = self.class_of(x)
                reps.append(x)
                left -= cls
            self._classes = reps
        return self._classes

    def closure(self, seed, abort_above=None):
        """Subgroup generated by the seed indices, as a sorted tuple of indices.

        Returns None if the closure grows past abort_above.
        """
        seen = {0}
        queue = [0]
        seeds = [s for s in seed if s != 0]
        k = 0
        while k < len(queue):
            x = queue[k]
            k += 1
            for s in seeds:
                y = self.mul(x, s)
                if y not in seen:
                    if abort_above is not None and len(seen) >= abort_above:
                        return None
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def set_orbit(self, fs):
        """Conjugation orbit of a subgroup element-set; returns (canonical, orbit)."""
        start = tuple(sorted(fs))
        seen = {start}
        queue = [start]
        k = 0
        while k < len(queue):
            cur = queue[k]
            k += 1
            for cm in self.conj_maps:
                nxt = tuple(sorted(cm[x] for x in cur))
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return min(seen), seen

    def subgroup(self, indices):
        degree = self.group.degree
        gens = [Permutation(self.elements[i]) for i in sorted(indices) if i != 0]
        # trim to a small generating set by greedy sifting
        small = []
        chain = StabilizerChain([], degree)
        for g in gens:
            if not chain.contains_tuple(g.images):
                small.append(g)
                chain = StabilizerChain(small, degree)
                if chain.order() == len(indices):
                    break
        return PermGroup(small, degree)


# ---------------------------------------------------------------------------
# subgroup enumeration

@dataclass
class SubgroupClass:
    representative: PermGroup
    class_size: int
    order: int
    solvable: bool
    rep_indices: tuple = field(repr=False, default=())


@dataclass
class SubgroupList:
    parent: PermGroup
    classes: list
    mode: str

    def total_count(self):
        return sum(c.class_size for c in self.classes)

    def orders(self):
        return sorted(c.order for c in self.classes)

    def by_order(self, n):
        return [c for c in self.classes if c.order == n]


EXHAUSTIVE_ORDER_BOUND = 20_000
SOLVABLE_ORDER_BOUND = 200_000


def enumerate_subgroups(group: PermGroup, mode="exhaustive",
                        order_bound=None) -> SubgroupList:
    """All subgroup conjugacy classes (exhaustive) or all solvable ones.

    Exhaustive mode combines the cyclic-extension sweep (complete for
    solvable subgroups) with two-generator closures over class
    representatives, then re-runs the extension sweep, which finds the
    remaining subgroups with a solvable quotient over a found one.
    """
    if mode not in ("exhaustive", "solvable-only"):
        raise ValueError("unknown mode %r" % mode)
    n = group.order()
    bound = order_bound or (EXHAUSTIVE_ORDER_BOUND if mode == "exhaustive"
                            else SOLVABLE_ORDER_BOUND)
    if n > bound:
        raise ValueError("group order %d exceeds %s bound %d" % (n, mode, bound))
    tab = _ElementTable(group, bound)

    classes = {}          # canonical sorted tuple -> dict record
    canon_of = {}         # any member sorted tuple -> canonical

    def register(indices, solvable_hint=None):
        key = tuple(sorted(indices))
        canon = canon_of.get(key)
        if canon is not None:
            return False
        canon, orbit = tab.set_orbit(key)
        for member in orbit:
            canon_of[member] = canon
        rec = {
            "indices": canon,
            "size": len(orbit),
            "order": len(canon),
            "solvable": solvable_hint,
        }
        classes[canon] = rec
        return True

    register((0,), solvable_hint=True)
    for i in range(1, len(tab.elements)):
        cyc = tab.closure((i,))
        register(cyc, solvable_hint=True)

    def extension_sweep():
        """Grow every known class by prime cyclic extensions; returns #new."""
        added = 0
        work = sorted(classes.keys(), key=lambda k: (len(k), k))
        pos = 0
        while pos < len(work):
            canon = work[pos]
            pos += 1
            rec = classes[canon]
            H = set(canon)
            order_h = rec["order"]
            if order_h == n:
                continue
            # normalizer of H at element level
            hgens = _sub_generating_indices(tab, canon)
            nb = []
            for x in range(n):
                xi = tab.inv[x]
                if all(tab.mul(tab.mul(xi, h), x) in H for h in hgens):
                    nb.append(x)
            ratio = len(nb) // order_h
            for p in _prime_divisors(ratio):
                target = order_h * p
                if target > n:
                    continue
                for x in nb:
                    if x in H:
                        continue
                    # x^p in H and (since x normalizes H) <H,x> = union of H x^i
                    xp = x
                    for _ in range(p - 1):
                        xp = tab.mul(xp, x)
                    if xp not in H:
                        continue
                    K = set(H)
                    cur = x
                    for _ in range(p - 1):
                        K.update(tab.mul(h, cur) for h in H)
                        cur = tab.mul(cur, x)
                    if len(K) != target:
                        continue
                    if register(K, solvable_hint=rec["solvable"]):
                        added += 1
                        work.append(canon_of[tuple(sorted(K))])
        return added

    extension_sweep()

    if mode == "exhaustive":
        for a in tab.class_reps():
            if a == 0:
                continue
            for b in range(1, n):
                pair = tab.closure((a, b))
                register(pair)
        extension_sweep()

    out = []
    for canon in sorted(classes.keys(), key=lambda k: (len(k), k)):
        rec = classes[canon]
        rep = tab.subgroup(canon)
        solv = rec["solvable"]
        if solv is None:
            solv = rep.is_solvable()
        if mode == "solvable-only" and not solv:
            continue
        out.append(SubgroupClass(representative=rep, class_size=rec["size"],
                                 order=rec["order"], solvable=solv,
                                 rep_indices=canon))
    return SubgroupList(parent=group, classes=out, mode=mode)


def _sub_generating_indices(tab, canon):
    """A small generating set (as element indices) for the subgroup `canon`."""
    target = len(canon)
    gens = []
    have = {0}
    for i in canon:
        if i in have:
            continue
        gens.append(i)
        have = set(tab.closure(tuple(gens)))
        if len(have) == target:
            break
    return gens


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def brute_subgroups(group: PermGroup, order_limit=500):
    """Independent oracle: the full subgroup lattice by one-element closures.

    Exponential in spirit; intended for |group| <= 500 cross-checks only.
    Returns the set of subgroups as frozensets of element indices.
    """
    n = group.order()
    if n > order_limit:
        raise ValueError("oracle limited to order <= %d" % order_limit)
    tab = _ElementTable(group, order_limit)
    all_idx = range(n)
    found = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for S in frontier:
            for g in all_idx:
                if g in S:
                    continue
                T = frozenset(tab.closure(tuple(S) + (g,)))
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return found


# ---------------------------------------------------------------------------
# targeted subgroup search

def sylow_subgroup(group: PermGroup, p, index_bound=200_000):
    """A Sylow p-subgroup, by the ascending-normalizer construction."""
    n = group.order()
    full = 1
    while n % p == 0:
        full *= p
        n //= p
    if full == 1:
        return PermGroup([], group.degree)
    # find an element of order p deterministically: power up generators,
    # then products, until one has order divisible by p
    seed = None
    rng_words = _word_stream(group)
    for t in rng_words:
        o = _perm_order(t)
        if o % p == 0:
            q = t
            while o % p == 0:
                o //= p
            for _ in range(o - 1):
                q = _compose(q, t)
            # q now has p-power order
            seed = q
            break
    P = PermGroup([Permutation(seed)], group.degree)
    while P.order() < full:
        N = group.normalizer(P, index_bound=index_bound)
        reps, _ = N.coset_reps(P)
        grew = False
        for r in reps:
            if P.chain.contains_tuple(r):
                continue
            # want the coset rP to have order p in N/P: r^p in P
            rp = r
            for _ in range(p - 1):
                rp = _compose(rp, r)
            if P.chain.contains_tuple(rp):
                P = PermGroup(list(P.generators) + [Permutation(r)], group.degree)
                grew = True
                break
        if not grew:
            raise RuntimeError("sylow construction stalled at order %d" % P.order())
    return P


def _word_stream(group, max_words=10_000):
    """Deterministic stream of non-identity element tuples of the group."""
    gens = [g.images for g in group.generators]
    if not gens:
        return
    ident = tuple(range(group.degree))
    seen = set()
    queue = list(gens)
    i = 0
    while i < len(queue) and len(seen) < max_words:
        t = queue[i]
        i += 1
        if t == ident or t in seen:
            continue
        seen.add(t)
        yield t
        for g in gens:
            queue.append(_compose(t, g))


def find_subgroup_by_order(group: PermGroup, target_order, trials=300, seed=0):
    """Targeted witness search; returns a subgroup of exactly target_order,
    or None (absence of a witness, never a nonexistence proof).

    Deterministic for a fixed seed: Sylow subgroups and their normalizers are
    tried first, then seeded random two-element closures, then exhaustive
    enumeration inside a strictly smaller found overgroup.
    """
    import random

    n = group.order()
    if n % target_order != 0:
        raise ValueError("target order %d does not divide group order %d"
                         % (target_order, n))
    if target_order == n:
        return group
    if target_order == 1:
        return PermGroup([], group.degree)

    byproducts = {}

    def stash(h):
        o = h.order()
        if 1 < o < n and o not in byproducts:
            byproducts[o] = h

    # Sylow subgroups and their normalizers for primes dividing the target
    for p in _prime_divisors(target_order):
        try:
            P = sylow_subgroup(group, p)
        except RuntimeError:
            continue
        stash(P)
        if P.order() == target_order:
            return P
        try:
            N = group.normalizer(P)
        except ValueError:
            N = None
        if N is not None:
            stash(N)
            if N.order() == target_order:
                return N

    # p-group targets always resolve inside a Sylow subgroup
    pd = _prime_divisors(target_order)
    if len(pd) == 1 and pd[0] ** _padic_exp(target_order, pd[0]) == target_order:
        P = byproducts.get(_padic_power(n, pd[0]))
        if P is None:
            P = sylow_subgroup(group, pd[0])
        if P.order() >= target_order and P.order() <= EXHAUSTIVE_ORDER_BOUND:
            subs = enumerate_subgroups(P, "exhaustive")
            for c in subs.classes:
                if c.order == target_order:
                    return c.representative
        return None

    rng = random.Random(seed)
    for _ in range(trials):
        a = group.chain.random_tuple(rng)
        b = group.chain.random_tuple(rng)
        h = _closure_group(group.degree, [a, b], abort_above=target_order)
        if h is None:
            continue
        o = h.order()
        if o == target_order:
            return h
        stash(h)

    # normalizers of byproducts whose order divides the target
    for o in sorted(byproducts):
        if target_order % o == 0:
            try:
                N = group.normalizer(byproducts[o])
            except ValueError:
                continue
            stash(N)
            if N.order() == target_order:
                return N

    # enumerate inside a small strict overgroup
    for o in sorted(byproducts):
        if o % target_order == 0 and o <= EXHAUSTIVE_ORDER_BOUND:
            subs = enumerate_subgroups(byproducts[o], "exhaustive")
            for c in subs.classes:
                if c.order == target_order:
                    return c.representative
    return None


def _closure_group(degree, seeds, abort_above=None):
    """Group generated by seed tuples, or None if it outgrows abort_above."""
    ident = tuple(range(degree))
    seeds = [t for t in seeds if t != ident]
    seen = {ident}
    queue = [ident]
    i = 0
    while i < len(queue):
        t = queue[i]
        i += 1
        for s in seeds:
            t2 = _compose(t, s)
            if t2 not in seen:
                if abort_above is not None and len(seen) > abort_above:
                    return None
                seen.add(t2)
                queue.append(t2)
    if abort_above is not None and len(seen) > abort_above:
        return None
    return PermGroup([Permutation(s) for s in seeds], degree)


def _padic_exp(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _padic_power(n, p):
    return p ** _padic_exp(n, p)


# ---------------------------------------------------------------------------
# small-group factories (used across tests and the Cayley catalog)

def symmetric_group(n):
    if n <= 1:
        return PermGroup([], max(n, 1))
    gens = [from_cycles(n, [tuple(range(n))]), from_cycles(n, [(0, 1)])]
    return PermGroup(gens)


def alternating_group(n):
    if n <= 2:
        return PermGroup([], max(n, 1))
    if n == 3:
        return PermGroup([from_cycles(3, [(0, 1, 2)])])
    gens = [from_cycles(n, [(0, 1, 2)])]
    if n % 2 == 1:
        gens.append(from_cycles(n, [tuple(range(n))]))
    else:
        gens.append(from_cycles(n, [tuple(range(1, n))]))
    return PermGroup(gens)


def cyclic_group(n):
    if n == 1:
        return PermGroup([], 1)
    return PermGroup([from_cycles(n, [tuple(range(n))])])


def dihedral_group(n):
    """Dihedral group of order 2n acting on n points."""
    rot = from_cycles(n, [tuple(range(n))])
    ref = Permutation([(n - x) % n for x in range(n)])
    return PermGroup([rot, ref])


# ---------------------------------------------------------------------------
# .grp file format

def parse_grp(text, source="<string>"):
    """Parse the group definition format: ``perm <degree>`` then one
    generator per line as space-separated images."""
    lines = text.splitlines()
    degree = None
    gens = []
    for ln, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "perm":
                raise ValueError("%s:%d: expected header 'perm <degree>'" % (source, ln))
            try:
                degree = int(parts[1])
            except ValueError:
                raise ValueError("%s:%d: bad degree %r" % (source, ln, parts[1]))
            if degree <= 0:
                raise ValueError("%s:%d: degree must be positive" % (source, ln))
            continue
        parts = line.split()
        if len(parts) != degree:
            raise ValueError("%s:%d: expected %d images, got %d"
                             % (source, ln, degree, len(parts)))
        try:
            images = [int(x) for x in parts]
        except ValueError:
            raise ValueError("%s:%d: non-integer image" % (source, ln))
        try:
            gens.append(Permutation(images))
        except ValueError as e:
            raise ValueError("%s:%d: %s" % (source, ln, e))
    if degree is None:
        raise ValueError("%s: missing 'perm <degree>' header" % source)
    return PermGroup(gens, degree)


def format_grp(group: PermGroup, comment=None):
    out = []
    if comment:
        for line in comment.splitlines():
            out.append("# " + line)
    out.append("perm %d" % group.degree)
    for g in group.generators:
        out.append(" ".join(str(x) for x in g.images))
    return "\n".join(out) + "\n"
