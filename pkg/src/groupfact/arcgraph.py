"""Coset graphs, Cayley graphs, and exact s-arc-transitivity.

Graphs are immutable and stored as per-vertex neighbor bitmasks.  The
automorphism engine is an individualization-refinement backtracker over a
stabilizer tower: a base of vertices is chosen by repeatedly individualizing
the first vertex of the first non-singleton cell of the equitable partition;
the search then finds, level by level, generators mapping each base vertex
across its cell, pruning candidates already in the orbit of the known
generators.  Orders come from a stabilizer chain over the same base.

s-arc-transitivity is decided arithmetically: a group acting on a regular
graph of valency k is transitive on s-arcs exactly when the orbit of one
fixed s-arc (computed as a product of transversal sizes along a prefixed
chain) has full size n*k*(k-1)^(s-1).
"""

import itertools
import warnings
from dataclasses import dataclass

from .permcore import (
    EXHAUSTIVE_ORDER_BOUND, PermGroup, Permutation, alternating_group,
    cyclic_group, dihedral_group, enumerate_subgroups, symmetric_group,
    sylow_subgroup,
)
from .gfmat import GF

MAX_AUT_VERTICES = 300
S_ARC_CAP = 4


# ---------------------------------------------------------------------------
# graphs

@dataclass(frozen=True)
class Graph:
    """Simple undirected graph as a tuple of neighbor bitmasks."""

    masks: tuple

    @property
    def n(self):
        return len(self.masks)

    def neighbors(self, v):
        out, m = [], self.masks[v]
        while m:
            b = m & -m
            out.append(b.bit_length() - 1)
            m ^= b
        return out

    def degree(self, v):
        return self.masks[v].bit_count()

    def has_edge(self, u, v):
        return bool(self.masks[u] >> v & 1)

    def edge_count(self):
        return sum(m.bit_count() for m in self.masks) // 2

    def edges(self):
        return [(u, v) for u in range(self.n)
                for v in self.neighbors(u) if u < v]

    def valency(self):
        """Common degree, or None when the graph is irregular."""
        degs = {m.bit_count() for m in self.masks}
        return degs.pop() if len(degs) == 1 else None

    def connected(self):
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                nxt |= self.masks[b.bit_length() - 1]
                m ^= b
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def girth(self):
        """Length of a shortest cycle, or None for a forest (BFS from every
        vertex, counting the shortest closure)."""
        best = None
        for s in range(self.n):
            dist = {s: 0}
            parent = {s: -1}
            queue = [s]
            i = 0
            while i < len(queue):
                x = queue[i]
                i += 1
                for y in self.neighbors(x):
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        queue.append(y)
                    elif parent[x] != y and dist[y] >= dist[x]:
                        c = dist[x] + dist[y] + 1
                        if best is None or c < best:
                            best = c
        return best

    def is_bipartite(self):
        color = {}
        for s in range(self.n):
            if s in color:
                continue
            color[s] = 0
            queue = [s]
            i = 0
            while i < len(queue):
                x = queue[i]
                i += 1
                for y in self.neighbors(x):
                    if y not in color:
                        color[y] = color[x] ^ 1
                        queue.append(y)
                    elif color[y] == color[x]:
                        return False
        return True


def graph_from_edges(n, edges):
    masks = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError("vertex out of range in edge (%d, %d)" % (u, v))
        if u == v:
            raise ValueError("loop at vertex %d" % u)
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph(tuple(masks))


def parse_edg(text, source="<string>"):
    """Parse the edge-list format: ``graph <n>`` then one ``u v`` per line."""
    n = None
    edges = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "graph":
                raise ValueError("%s:%d: expected header 'graph <n>'"
                                 % (source, ln))
            try:
                n = int(parts[1])
            except ValueError:
                raise ValueError("%s:%d: non-integer vertex count"
                                 % (source, ln))
            if n < 0:
                raise ValueError("%s:%d: negative vertex count" % (source, ln))
            continue
        if len(parts) != 2:
            raise ValueError("%s:%d: expected 'u v'" % (source, ln))
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError("%s:%d: non-integer vertex" % (source, ln))
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError("%s:%d: vertex out of range" % (source, ln))
        if u == v:
            raise ValueError("%s:%d: loop not allowed" % (source, ln))
        edges.append((u, v))
    if n is None:
        raise ValueError("%s: missing 'graph <n>' header" % source)
    return graph_from_edges(n, edges)


def format_edg(graph, comment=None):
    out = []
    if comment:
        for line in comment.splitlines():
            out.append("# " + line)
    out.append("graph %d" % graph.n)
    for u, v in graph.edges():
        out.append("%d %d" % (u, v))
    return "\n".join(out) + "\n"


def permutation_preserves(graph, perm):
    imgs = perm.images if isinstance(perm, Permutation) else tuple(perm)
    for v in range(graph.n):
        m = 0
        a = graph.masks[v]
        while a:
            b = a & -a
            m |= 1 << imgs[b.bit_length() - 1]
            a ^= b
        if m != graph.masks[imgs[v]]:
            return False
    return True


# ---------------------------------------------------------------------------
# individualization-refinement engine

def _mask_of(cell):
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _degree_cells(masks):
    buckets = {}
    for v, m in enumerate(masks):
        buckets.setdefault(m.bit_count(), []).append(v)
    return [buckets[d] for d in sorted(buckets)]


def _equitable(masks, cells):
    """Coarsest stable refinement; cells ordered canonically by the split
    keys, so two runs from aligned inputs stay aligned."""
    cells = [list(c) for c in cells]
    while True:
        cellmasks = [_mask_of(c) for c in cells]
        out = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            buckets = {}
            for v in c:
                key = tuple((masks[v] & cm).bit_count() for cm in cellmasks)
                buckets.setdefault(key, []).append(v)
            if len(buckets) == 1:
                out.append(c)
            else:
                changed = True
                for key in sorted(buckets):
                    out.append(buckets[key])
        if not changed:
            return out
        cells = out


def _refine_pair(md, mr, cd, cr):
    """Refine aligned domain/range partitions in lockstep; None when the
    split traces disagree (no isomorphism respects the current forcing)."""
    while True:
        cmd = [_mask_of(c) for c in cd]
        cmr = [_mask_of(c) for c in cr]
        outd, outr = [], []
        changed = False
        for a, b in zip(cd, cr):
            if len(a) != len(b):
                return None
            if len(a) == 1:
                outd.append(a)
                outr.append(b)
                continue
            bd, br = {}, {}
            for v in a:
                key = tuple((md[v] & cm).bit_count() for cm in cmd)
                bd.setdefault(key, []).append(v)
            for v in b:
                key = tuple((mr[v] & cm).bit_count() for cm in cmr)
                br.setdefault(key, []).append(v)
            keys = sorted(bd)
            if keys != sorted(br):
                return None
            if any(len(bd[k]) != len(br[k]) for k in keys):
                return None
            if len(keys) == 1:
                outd.append(a)
                outr.append(b)
            else:
                changed = True
                for k in keys:
                    outd.append(bd[k])
                    outr.append(br[k])
        if not changed:
            return cd, cr
        cd, cr = outd, outr


def _individualize(cells, v):
    """Split v off its cell; returns (cells, index of the split cell)."""
    out = []
    where = None
    for i, c in enumerate(cells):
        if v in c:
            where = len(out)
            if len(c) == 1:
                out.append(c)
            else:
                out.append([v])
                out.append([x for x in c if x != v])
        else:
            out.append(c)
    if where is None:
        raise ValueError("vertex %d not in partition" % v)
    return out, where


def _match(md, mr, cd, cr):
    """Exhaustive search for a bijection refining the aligned partitions and
    carrying md-adjacency to mr-adjacency; None proves there is none."""
    ref = _refine_pair(md, mr, cd, cr)
    if ref is None:
        return None
    cd, cr = ref
    pick = None
    for i, c in enumerate(cd):
        if len(c) > 1:
            pick = i
            break
    if pick is None:
        n = len(md)
        img = [0] * n
        for a, b in zip(cd, cr):
            img[a[0]] = b[0]
        for v in range(n):
            m = 0
            a = md[v]
            while a:
                bit = a & -a
                m |= 1 << img[bit.bit_length() - 1]
                a ^= bit
            if m != mr[img[v]]:
                return None
        return img
    a, b = cd[pick], cr[pick]
    v = a[0]
    rest = [x for x in a if x != v]
    for w in b:
        ncd = cd[:pick] + [[v], rest] + cd[pick + 1:]
        ncr = cr[:pick] + [[w], [x for x in b if x != w]] + cr[pick + 1:]
        res = _match(md, mr, ncd, ncr)
        if res is not None:
            return res
    return None


def graph_isomorphism(g1, g2):
    """An explicit vertex bijection carrying g1 to g2, or None."""
    if g1.n != g2.n:
        return None
    if g1.n == 0:
        return []
    d1 = _degree_cells(g1.masks)
    d2 = _degree_cells(g2.masks)
    if [len(c) for c in d1] != [len(c) for c in d2]:
        return None
    if sorted({g1.masks[c[0]].bit_count() for c in d1}) != \
            sorted({g2.masks[c[0]].bit_count() for c in d2}):
        return None
    return _match(g1.masks, g2.masks, d1, d2)


def _point_orbit(x, gens):
    seen = {x}
    queue = [x]
    i = 0
    while i < len(queue):
        p = queue[i]
        i += 1
        for g in gens:
            q = g.images[p]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def graph_automorphisms(graph):
    """Full automorphism group, by the tower search described above.

    Every returned generator is re-checked against the adjacency relation,
    and the orbit partition of the result must refine the root equitable
    partition; both are cheap soundness guards, while completeness rests on
    the exhaustive per-candidate matching.
    """
    n = graph.n
    if n > MAX_AUT_VERTICES:
        raise ValueError("graph has %d vertices, automorphism bound is %d"
                         % (n, MAX_AUT_VERTICES))
    if n == 0:
        raise ValueError("empty graph")
    masks = graph.masks
    root = _equitable(masks, _degree_cells(masks))

    base = []
    towers = [root]
    cur = root
    while True:
        target = None
        for c in cur:
            if len(c) > 1:
                target = c
                break
        if target is None:
            break
        v = target[0]
        base.append(v)
        split, _ = _individualize(cur, v)
        cur = _equitable(masks, split)
        towers.append(cur)

    gens = []
    for lev in reversed(range(len(base))):
        b = base[lev]
        cell = next(c for c in towers[lev] if b in c)
        for w in cell:
            if w == b or w in _point_orbit(b, gens):
                continue
            cd, cr = root, root
            ok = True
            for bb, ww in zip(base[:lev] + [b], base[:lev] + [w]):
                cd2, id_ = _individualize(cd, bb)
                cr2, ir_ = _individualize(cr, ww)
                if id_ != ir_:
                    ok = False
                    break
                ref = _refine_pair(masks, masks, cd2, cr2)
                if ref is None:
                    ok = False
                    break
                cd, cr = ref
            if not ok:
                continue
            img = _match(masks, masks, cd, cr)
            if img is not None:
                gens.append(Permutation(img))

    aut = PermGroup(gens, n)
    for g in aut.generators:
        if not permutation_preserves(graph, g):
            raise RuntimeError("automorphism search produced a non-automorphism")
    rootmasks = [_mask_of(c) for c in root]
    for orb in aut.orbits():
        om = _mask_of(orb)
        if not any(om & cm == om for cm in rootmasks):
            raise RuntimeError("orbit crosses an equitable cell")
    return aut


# ---------------------------------------------------------------------------
# arc transitivity

@dataclass(frozen=True)
class ArcReport:
    connected: bool
    valency: object     # int, or None when irregular
    girth: object       # int, or None for forests
    s_max: int          # -1 when not even vertex-transitive
    transitive_on_vertices: bool


def _greedy_arc(graph, length):
    """Lexicographically first s-arc from vertex 0, or None if stuck."""
    arc = [0]
    nbrs = graph.neighbors(0)
    if not nbrs:
        return None
    arc.append(nbrs[0])
    while len(arc) < length + 1:
        prev, cur = arc[-2], arc[-1]
        step = [x for x in graph.neighbors(cur) if x != prev]
        if not step:
            return None
        arc.append(step[0])
    return arc


def s_arc_transitivity(graph, g, cap=S_ARC_CAP):
    """Exact s-arc-transitivity report for a group acting on the graph."""
    if g.degree != graph.n:
        raise ValueError("group degree does not match the graph")
    for p in g.generators:
        if not permutation_preserves(graph, p):
            raise ValueError("generator does not preserve adjacency")
    n = graph.n
    order = g.order()
    vt = len(g.orbit(0)) == n if n else True
    valency = graph.valency()
    report = lambda s: ArcReport(connected=graph.connected(), valency=valency,
                                 girth=graph.girth(), s_max=s,
                                 transitive_on_vertices=vt)
    if not vt:
        return report(-1)
    if valency is None:
        raise RuntimeError("vertex-transitive graph must be regular")
    s_max = 0
    k = valency
    if k == 0:
        return report(0)
    for s in range(1, cap + 1):
        arc = _greedy_arc(graph, s)
        count = n * k * (k - 1) ** (s - 1)
        if arc is None or count == 0:
            break
        chain = g.chain_with_base(tuple(arc))
        orbit = 1
        for lvl in chain.levels[: len(arc)]:
            orbit *= len(lvl.transversal)
        if orbit > count or order % orbit:
            raise RuntimeError("arc orbit exceeds the arc count")
        if orbit != count:
            break
        s_max = s
    return report(s_max)


@dataclass(frozen=True)
class LocalActionReport:
    vertex: int
    edge: tuple
    stabilizer_order: int
    local_image: PermGroup
    kernel_order: int
    gv1_order: int
    meet_order: int
    arc_image_order: int
    embedding_divides: bool


def _restriction(perms, points):
    """Restrict permutations preserving the point set to that set."""
    pos = {p: i for i, p in enumerate(points)}
    out = []
    for t in perms:
        imgs = t.images if isinstance(t, Permutation) else t
        out.append(Permutation([pos[imgs[p]] for p in points]))
    return out


def local_action(graph, g, v, w=None):
    """Vertex stabilizer, its action on the neighborhood, and the order-level
    embedding of the neighborhood kernel along an edge."""
    if len(g.orbit(0)) != graph.n:
        raise ValueError("group is not vertex-transitive")
    nbrs = graph.neighbors(v)
    if w is None:
        w = nbrs[0]
    if not graph.has_edge(v, w):
        raise ValueError("(%d, %d) is not an edge" % (v, w))
    order = g.order()
    stab_order = order // graph.n

    gv = g.pointwise_stabilizer([v])
    local = PermGroup(_restriction(gv.generators, nbrs) or
                      [Permutation(list(range(len(nbrs))))], len(nbrs))
    kernel_order = stab_order // local.order()

    def pointwise(points):
        return g.pointwise_stabilizer(points)

    gv1 = pointwise([v] + nbrs)
    nbrs_w = graph.neighbors(w)
    meet = pointwise(sorted(set([v] + nbrs + [w] + nbrs_w)))
    arc_stab = pointwise([v, w])
    arc_image = PermGroup(_restriction(arc_stab.generators, nbrs_w) or
                          [Permutation(list(range(len(nbrs_w))))], len(nbrs_w))
    quot = gv1.order() // meet.order()
    return LocalActionReport(
        vertex=v, edge=(v, w), stabilizer_order=stab_order,
        local_image=local, kernel_order=kernel_order,
        gv1_order=gv1.order(), meet_order=meet.order(),
        arc_image_order=arc_image.order(),
        embedding_divides=arc_image.order() % quot == 0)


# ---------------------------------------------------------------------------
# constructions from groups

@dataclass(frozen=True)
class CosetGraphSpec:
    """Data for a coset graph: ambient group, core-free vertex stabilizer,
    and a double-coset representative with elt not in k and elt^2 in k."""

    g: PermGroup
    k: PermGroup
    elt: Permutation

    def __post_init__(self):
        if not self.k.is_subgroup(self.g):
            raise ValueError("k is not a subgroup of g")
        if not self.g.contains(self.elt):
            raise ValueError("elt is not an element of g")
        if self.k.contains(self.elt):
            raise ValueError("elt lies in k")
        if not self.k.contains(self.elt * self.elt):
            raise ValueError("elt^2 does not lie in k")
        if not self.g.core(self.k).is_trivial():
            raise ValueError("k is not core-free in g")


def coset_graph(spec):
    """Graph on the right cosets of k, with Kx ~ Ky iff y x^-1 in K elt K.

    Membership in the double coset is tested through canonical coset
    representatives, one sift per pair.  The valency identity
    |K| / |K meet K^elt| and the connectivity criterion <K, elt> = G are
    asserted on the result.
    """
    g, k, elt = spec.g, spec.k, spec.elt
    reps, _ = g.coset_reps(k)
    kchain = k.chain
    double = {kchain.canonical_coset_rep(_mul(elt.images, t))
              for t in kchain.elements()}
    n = len(reps)
    edges = []
    for i in range(n):
        inv_i = _inv(reps[i])
        for j in range(i + 1, n):
            if kchain.canonical_coset_rep(_mul(reps[j], inv_i)) in double:
                edges.append((i, j))
                if kchain.canonical_coset_rep(
                        _mul(reps[i], _inv(reps[j]))) not in double:
                    raise RuntimeError("double coset is not symmetric")
    graph = graph_from_edges(n, edges)

    meet = k.intersection_order_brute(k.conjugate(elt),
                                      limit=max(5000, k.order()))
    if graph.valency() != k.order() // meet:
        raise RuntimeError("valency disagrees with |K|/|K meet K^elt|")
    gen_span = PermGroup(list(k.generators) + [elt], g.degree)
    if graph.connected() != (gen_span.order() == g.order()):
        raise RuntimeError("connectivity disagrees with <K, elt> = G")
    return graph


def _mul(p, q):
    return tuple(q[x] for x in p)


def _inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cayley_graph(r, conn):
    """Cayley graph of r with connection set conn (inverse-closed, no
    identity); vertices are the chain's element enumeration."""
    elems = r.chain.elements()
    index = {t: i for i, t in enumerate(elems)}
    conn_t = []
    for s in conn:
        t = s.images if isinstance(s, Permutation) else tuple(s)
        if t not in index:
            raise ValueError("connection element outside the group")
        if t == tuple(range(r.degree)):
            raise ValueError("identity in connection set")
        conn_t.append(t)
    cset = set(conn_t)
    if any(_inv(t) not in cset for t in cset):
        raise ValueError("connection set not inverse-closed")
    edges = []
    for i, x in enumerate(elems):
        for s in cset:
            j = index[_mul(s, x)]
            if i < j:
                edges.append((i, j))
    graph = graph_from_edges(len(elems), edges)
    spans = PermGroup([Permutation(t) for t in cset] or
                      [Permutation(list(range(r.degree)))], r.degree)
    if graph.connected() != (spans.order() == r.order()):
        raise RuntimeError("connectivity disagrees with <S> = R")
    return graph


def normal_quotient(graph, g, n_sub):
    """Contract the orbits of a normal subgroup of g to single vertices."""
    for p in g.generators:
        if not permutation_preserves(graph, p):
            raise ValueError("g does not act on the graph")
    for s in n_sub.generators:
        for x in g.generators:
            if not n_sub.contains(s.conjugate_by(x)):
                raise ValueError("subgroup is not normal in g")
    orbits = n_sub.orbits()
    if len(orbits) < 3:
        warnings.warn("normal quotient over %d orbits; the semiregularity "
                      "theory needs at least 3" % len(orbits))
    where = {}
    for i, orb in enumerate(orbits):
        for v in orb:
            where[v] = i
    edges = set()
    for u, v in graph.edges():
        a, b = where[u], where[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return graph_from_edges(len(orbits), sorted(edges))


# ---------------------------------------------------------------------------
# named graphs

def petersen():
    """Disjointness graph of the 2-subsets of a 5-set."""
    pairs = list(itertools.combinations(range(5), 2))
    edges = [(i, j) for i in range(10) for j in range(i + 1, 10)
             if not set(pairs[i]) & set(pairs[j])]
    return graph_from_edges(10, edges)


def hoffman_singleton():
    """Five pentagons and five pentagrams: vertex j of pentagon h is joined
    to vertex h*i + j (mod 5) of pentagram i."""
    def p(h, j):
        return 5 * h + j % 5

    def q(i, j):
        return 25 + 5 * i + j % 5

    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((p(h, j), p(h, j + 1)))
            edges.append((q(h, j), q(h, j + 2)))
    for h in range(5):
        for i in range(5):
            for j in range(5):
                edges.append((p(h, j), q(i, h * i + j)))
    return graph_from_edges(50, set((min(u, v), max(u, v)) for u, v in edges))


def _pg24():
    """Points and lines of the projective plane over GF(4), as index sets."""
    F = GF(2, 2)
    pts = []
    seen = set()
    for code in range(1, 4 ** 3):
        v = (code % 4, code // 4 % 4, code // 16)
        for c in v:
            if c:
                inv = F.inv(c)
                w = tuple(F.mul(x, inv) for x in v)
                break
        if w not in seen:
            seen.add(w)
            pts.append(w)
    index = {v: i for i, v in enumerate(pts)}

    def dot(u, v):
        acc = 0
        for a, b in zip(u, v):
            acc = F.add(acc, F.mul(a, b))
        return acc

    lines = []
    for w in pts:
        line = frozenset(index[v] for v in pts if dot(v, w) == 0)
        lines.append(line)

    def proj_perm(mat):
        imgs = []
        for v in pts:
            w = tuple(F.add(F.add(F.mul(v[0], mat[0][r]),
                                  F.mul(v[1], mat[1][r])),
                            F.mul(v[2], mat[2][r])) for r in range(3))
            for c in w:
                if c:
                    inv = F.inv(c)
                    w = tuple(F.mul(x, inv) for x in w)
                    break
            imgs.append(index[w])
        return Permutation(imgs)

    # a cycle and one transvection stay diagonally conjugate into the prime
    # subfield; the torus element scales the root coefficients over all of
    # GF(4), which forces the full special linear group
    w = 2
    w2 = F.mul(w, w)
    cyc = proj_perm([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    trans = proj_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    torus = proj_perm([[w, 0, 0], [0, w2, 0], [0, 0, 1]])
    psl34 = PermGroup([cyc, trans, torus], 21)
    if psl34.order() != 20160:
        raise RuntimeError("projective group has order %d, expected 20160"
                           % psl34.order())
    return pts, lines, psl34


def _hyperovals(lines):
    """All 6-point sets meeting every line in at most 2 points."""
    linemasks = [_mask_of(line) for line in lines]
    out = []
    for combo in itertools.combinations(range(21), 6):
        m = _mask_of(combo)
        if all((m & lm).bit_count() <= 2 for lm in linemasks):
            out.append(frozenset(combo))
    return out


def _steiner_blocks():
    """Blocks of an S(3,6,22) on points 0..21 (21 = the extension point):
    the extended lines plus one group orbit of hyperovals, selected by the
    exact triple-cover axiom."""
    _, lines, psl34 = _pg24()
    ovals = _hyperovals(lines)
    oval_set = set(ovals)
    gens = [p.images for p in psl34.generators]

    orbits = []
    left = set(ovals)
    while left:
        start = min(left, key=sorted)
        orb = {start}
        queue = [start]
        while queue:
            o = queue.pop()
            for g in gens:
                o2 = frozenset(g[x] for x in o)
                if o2 not in orb:
                    if o2 not in oval_set:
                        raise RuntimeError("hyperoval image is not a hyperoval")
                    orb.add(o2)
                    queue.append(o2)
        orbits.append(orb)
        left -= orb

    line_blocks = [frozenset(line | {21}) for line in lines]
    for orb in sorted(orbits, key=len):
        blocks = line_blocks + [frozenset(o) for o in sorted(orb, key=sorted)]
        if len(blocks) != 77:
            continue
        cover = {}
        ok = True
        for blk in blocks:
            for triple in itertools.combinations(sorted(blk), 3):
                if triple in cover:
                    ok = False
                    break
                cover[triple] = blk
            if not ok:
                break
        if ok and len(cover) == 1540:
            return blocks
    raise RuntimeError("no hyperoval orbit completes a Steiner system")


def higman_sims():
    """100 vertices: a root, the 22 points, and the 77 blocks of S(3,6,22);
    root ~ points, point ~ containing blocks, blocks ~ when disjoint."""
    blocks = _steiner_blocks()
    edges = []
    for p in range(22):
        edges.append((0, 1 + p))
    for bi, blk in enumerate(blocks):
        for p in blk:
            edges.append((1 + p, 23 + bi))
    for bi in range(77):
        for bj in range(bi + 1, 77):
            if not blocks[bi] & blocks[bj]:
                edges.append((23 + bi, 23 + bj))
    graph = graph_from_edges(100, edges)
    if graph.valency() != 22:
        raise RuntimeError("construction is not 22-regular")
    return graph


_NAMED_GRAPHS = {
    "petersen": petersen,
    "hoffman-singleton": hoffman_singleton,
    "higman-sims": higman_sims,
}


def named_graph(name):
    try:
        return _NAMED_GRAPHS[name]()
    except KeyError:
        raise KeyError("unknown graph %r (have: %s)"
                       % (name, ", ".join(sorted(_NAMED_GRAPHS))))


# ---------------------------------------------------------------------------
# Cayley recognition over the small-group catalog

def _direct_product(a, b):
    da = a.degree
    gens = [list(p.images) + list(range(da, da + b.degree))
            for p in a.generators]
    gens += [list(range(da)) + [da + x for x in p.images]
             for p in b.generators]
    return PermGroup(gens, da + b.degree)


def _regular_from_table(elems, mul):
    idx = {e: i for i, e in enumerate(elems)}
    gens = [Permutation([idx[mul(e, g)] for e in elems]) for g in elems]
    return PermGroup(gens, len(elems))


def _quaternion_group():
    units = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"),
             (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    table = {("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
             ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
             ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1")}

    def mul(a, b):
        (s, x), (t, y) = a, b
        if x == "1":
            return (s * t, y)
        if y == "1":
            return (s * t, x)
        u, z = table[(x, y)]
        return (s * t * u, z)

    return _regular_from_table(units, mul)


def _dicyclic_12():
    elems = [(i, j) for j in range(2) for i in range(6)]

    def mul(a, b):
        (i, j), (k, l) = a, b
        if j == 0:
            return ((i + k) % 6, l)
        if l == 0:
            return ((i - k) % 6, 1)
        return ((i - k + 3) % 6, 0)

    return _regular_from_table(elems, mul)


def _groups_of_order(n):
    c = cyclic_group
    catalog = {
        1: [("C1", PermGroup([], 1))],
        2: [("C2", c(2))],
        3: [("C3", c(3))],
        4: [("C4", c(4)), ("C2xC2", _direct_product(c(2), c(2)))],
        5: [("C5", c(5))],
        6: [("C6", c(6)), ("S3", symmetric_group(3))],
        7: [("C7", c(7))],
        8: [("C8", c(8)), ("C4xC2", _direct_product(c(4), c(2))),
            ("C2xC2xC2", _direct_product(_direct_product(c(2), c(2)), c(2))),
            ("D8", dihedral_group(4)), ("Q8", _quaternion_group())],
        9: [("C9", c(9)), ("C3xC3", _direct_product(c(3), c(3)))],
        10: [("C10", c(10)), ("D10", dihedral_group(5))],
        11: [("C11", c(11))],
        12: [("C12", c(12)), ("C6xC2", _direct_product(c(6), c(2))),
             ("D12", dihedral_group(6)), ("A4", alternating_group(4)),
             ("Dic3", _dicyclic_12())],
    }
    return catalog[n]


def _connection_sets(r, valency):
    """All inverse-closed, identity-free subsets of the right size."""
    ident = tuple(range(r.degree))
    invol, pairs = [], []
    seen = set()
    for t in r.chain.elements():
        if t == ident or t in seen:
            continue
        ti = _inv(t)
        if ti == t:
            invol.append(t)
        else:
            pairs.append((t, ti))
            seen.add(ti)
    for ni in range(min(valency, len(invol)) + 1):
        rest = valency - ni
        if rest % 2 or rest // 2 > len(pairs):
            continue
        for inv_pick in itertools.combinations(invol, ni):
            for pair_pick in itertools.combinations(pairs, rest // 2):
                out = list(inv_pick)
                for a, b in pair_pick:
                    out.extend((a, b))
                yield [Permutation(t) for t in out]


def is_cayley(graph):
    """Whether the graph is a Cayley graph of some group of order n <= 12,
    by exhausting the group catalog and all valid connection sets."""
    n = graph.n
    if n > 12:
        raise ValueError("Cayley recognition is bounded at 12 vertices")
    valency = graph.valency()
    if valency is None:
        return False
    if valency == 0:
        return True
    want_connected = graph.connected()
    want_girth = graph.girth()
    for _, r in _groups_of_order(n):
        for conn in _connection_sets(r, valency):
            cay = cayley_graph(r, conn)
            if cay.connected() != want_connected:
                continue
            if cay.girth() != want_girth:
                continue
            if graph_isomorphism(cay, graph) is not None:
                return True
    return False


# ---------------------------------------------------------------------------
# 2-arc-transitive candidates inside a vertex stabilizer

def two_arc_candidates(g, k):
    """Pairs (m, w): m runs over subgroup classes of k whose coset action is
    2-transitive with <k, N_g(m)> = g, and w is a 2-element of N_g(m) with
    k meet k^w = m, <k, w> = g, and w^2 in k.  The coset graph of (g, k, w)
    is then a candidate 2-arc-transitive graph with vertex stabilizer k."""
    if k.order() > EXHAUSTIVE_ORDER_BOUND:
        raise ValueError("k is too large to enumerate")
    if not k.is_subgroup(g):
        raise ValueError("k is not a subgroup of g")
    out = []
    for cls in enumerate_subgroups(k, "exhaustive").classes:
        m = cls.representative
        if m.order() >= k.order():
            continue
        image, _ = k.coset_action(m)
        if image.degree < 2 or not image.is_k_transitive(2):
            continue
        norm = g.normalizer(m)
        if PermGroup(list(k.generators) + list(norm.generators),
                     g.degree).order() != g.order():
            continue
        w = _two_arc_witness(g, k, m, norm)
        if w is not None:
            out.append((m, w))
    return out


def _two_arc_witness(g, k, m, norm):
    p2 = sylow_subgroup(norm, 2)
    if p2.order() == 1:
        return None
    reps, _ = norm.coset_reps(norm.normalizer(p2))
    ident = tuple(range(g.degree))
    target = m.order()
    seen = set()
    for r in reps:
        for t in p2.conjugate(Permutation(r)).chain.elements():
            if t == ident or t in seen:
                continue
            seen.add(t)
            if not k.contains(_mul(t, t)):
                continue
            w = Permutation(t)
            if k.intersection_order_brute(
                    k.conjugate(w), limit=max(5000, k.order())) != target:
                continue
            if PermGroup(list(k.generators) + [w], g.degree).order() \
                    != g.order():
                continue
            return w
    return None
