"""Finite simplicial complexes and the compact constructions used to
check cohomological-dimension claims by direct computation.

The builders here produce honest simplicial models: mapping cylinders
of circle coverings (as order complexes of the face poset), iterated
Pontryagin-style triangle replacements with their collapse maps,
Edwards-Walsh modifications of a skeleton, joins via chain complexes.

Vertex labels may be anything hashable and mutually comparable; the
nested constructions use tagged tuples so that every generated label
stays comparable with its peers.
"""

from __future__ import annotations

from itertools import combinations

from . import chains
from .groups import Q as Q_GROUP
from .groups import Z as Z_GROUP
from .groups import Zmod
from .primes import check_prime

__all__ = [
    "Cylinder",
    "SimplicialComplex",
    "SimplicialMap",
    "boundary_simplex",
    "circle",
    "cohomology_of",
    "complex_from_text",
    "complex_to_text",
    "degree_map_circle",
    "ew_skeleton",
    "full_simplex",
    "homology_of",
    "induced",
    "map_from_text",
    "map_to_text",
    "mapping_cylinder",
    "pontryagin_stage",
]


def _perm_sign(values):
    sign = 1
    vals = list(values)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if vals[i] > vals[j]:
                sign = -sign
    return sign


class SimplicialComplex:
    """An abstract simplicial complex, stored closed under faces.

    Simplices are sorted tuples of vertex labels.  The constructor
    accepts any iterable of simplices (maximal ones suffice) and closes
    it downward.

    >>> s = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    >>> s.f_vector()
    (3, 3)
    """

    __slots__ = ("_by_dim", "_index", "_chain")

    def __init__(self, simplices):
        seen = set()
        for s in simplices:
            t = tuple(sorted(s))
            if len(set(t)) != len(t):
                raise ValueError(f"degenerate simplex: {s!r}")
            if not t:
                raise ValueError("the empty simplex is not allowed")
            for k in range(1, len(t) + 1):
                seen.update(combinations(t, k))
        by_dim = {}
        for s in seen:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {k: tuple(sorted(v)) for k, v in by_dim.items()}
        self._index = {}
        for k, ss in self._by_dim.items():
            for n, s in enumerate(ss):
                self._index[s] = (k, n)
        self._chain = None

    @property
    def dim(self):
        return max(self._by_dim) if self._by_dim else -1

    def simplices(self, k):
        return self._by_dim.get(k, ())

    def all_simplices(self):
        for k in sorted(self._by_dim):
            yield from self._by_dim[k]

    def vertices(self):
        return tuple(v for (v,) in self.simplices(0))

    def has(self, simplex):
        return tuple(sorted(simplex)) in self._index

    def index(self, simplex):
        """Position of the simplex within its dimension's ordering."""
        t = tuple(sorted(simplex))
        if t not in self._index:
            raise ValueError(f"not a simplex of this complex: {simplex!r}")
        return self._index[t]

    def f_vector(self):
        return tuple(len(self.simplices(k))
                     for k in range(self.dim + 1))

    def euler(self):
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def skeleton(self, n):
        keep = []
        for k in range(min(n, self.dim) + 1):
            keep.extend(self.simplices(k))
        return SimplicialComplex(keep)

    def full_subcomplex(self, keep_vertex):
        """The induced subcomplex on vertices passing the predicate."""
        kept = [s for s in self.all_simplices()
                if all(keep_vertex(v) for v in s)]
        return SimplicialComplex(kept)

    def chain_complex(self):
        """Simplicial chains with the sorted-vertex orientation.  The
        degree-k basis order matches simplices(k); the result is cached
        so maps over the same complex share the object."""
        if self._chain is not None:
            return self._chain
        top = max(self.dim, 0)
        ranks = [len(self.simplices(k)) for k in range(top + 1)]
        columns = {}
        for k in range(1, top + 1):
            cols = []
            for s in self.simplices(k):
                col = {}
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    col[self._index[face][1]] = (-1) ** i
                cols.append(col)
            columns[k] = cols
        self._chain = chains.ChainComplex.from_columns(ranks, columns)
        return self._chain

    def indices_of(self, sub):
        """Index sets of a subcomplex, per degree, for relative work."""
        out = {}
        for k in range(sub.dim + 1):
            idx = []
            for s in sub.simplices(k):
                kk, n = self.index(s)
                idx.append(n)
                del kk
            out[k] = tuple(sorted(idx))
        return out

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._by_dim == other._by_dim

    def __hash__(self):
        return hash(tuple(sorted(self._by_dim.items())))

    def __repr__(self):
        return f"SimplicialComplex(f_vector={self.f_vector()!r})"


class SimplicialMap:
    """A simplicial map given on vertices; images of simplices are
    checked to be simplices of the target (collapses are allowed)."""

    __slots__ = ("source", "target", "vertex_map")

    def __init__(self, source, target, vertex_map):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        for v in source.vertices():
            if v not in self.vertex_map:
                raise ValueError(f"vertex {v!r} has no image")
        tgt_vertices = set(target.vertices())
        for v, w in self.vertex_map.items():
            if w not in tgt_vertices:
                raise ValueError(f"image vertex {w!r} is not in the target")
        for s in source.all_simplices():
            if not target.has(set(self.vertex_map[v] for v in s)):
                raise ValueError(
                    f"image of {s!r} is not a simplex of the target")

    def image(self, simplex):
        return tuple(sorted(set(self.vertex_map[v] for v in simplex)))

    def chain_map(self):
        """The induced map of simplicial chain complexes.  Simplices
        collapsed by the vertex map contribute zero."""
        src = self.source.chain_complex()
        tgt = self.target.chain_complex()
        columns = {}
        for k in range(self.source.dim + 1):
            cols = []
            for s in self.source.simplices(k):
                imgs = [self.vertex_map[v] for v in s]
                if len(set(imgs)) != len(imgs):
                    cols.append({})
                    continue
                t = tuple(sorted(imgs))
                cols.append({self.target.index(t)[1]: _perm_sign(imgs)})
            columns[k] = cols
        return chains.ChainMap.from_columns(src, tgt, columns)

    def __repr__(self):
        return f"SimplicialMap({self.source!r} -> {self.target!r})"


# -- factories ---------------------------------------------------------------

def full_simplex(n):
    """The full n-simplex on vertices 0..n, top face included."""
    if not (isinstance(n, int) and n >= 0):
        raise ValueError(f"need n >= 0: {n!r}")
    return SimplicialComplex([tuple(range(n + 1))])


def boundary_simplex(n):
    """The boundary of the n-simplex, a combinatorial (n-1)-sphere."""
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"need n >= 1: {n!r}")
    return SimplicialComplex(combinations(range(n + 1), n))


def circle(k):
    """The cyclic triangulation of the circle on vertices 0..k-1."""
    if not (isinstance(k, int) and k >= 3):
        raise ValueError(f"a triangulated circle needs k >= 3: {k!r}")
    return SimplicialComplex([(i, (i + 1) % k) for i in range(k)])


def degree_map_circle(p, k=3):
    """The standard p-fold covering of circles, vertex i -> i mod k.

    >>> f = degree_map_circle(2, 3)
    >>> f.source.f_vector(), f.target.f_vector()
    ((6, 6), (3, 3))
    """
    if not (isinstance(p, int) and p >= 2):
        raise ValueError(f"covering degree must be at least 2: {p!r}")
    if not (isinstance(k, int) and k >= 3):
        raise ValueError(f"base circle needs k >= 3: {k!r}")
    return SimplicialMap(circle(p * k), circle(k),
                         {i: i % k for i in range(p * k)})


# -- mapping cylinders -------------------------------------------------------

class Cylinder:
    """A simplicial mapping cylinder.

    complex is the order complex of the face poset of source and target
    joined along the map; domain and target are the two ends (the ends
    carry the barycentric subdivisions of the original complexes).
    retraction collapses everything onto the target end.
    """

    __slots__ = ("map", "complex", "domain", "target",
                 "domain_inclusion", "target_inclusion", "retraction")

    def __init__(self, f: SimplicialMap):
        self.map = f
        elements = ([("K", s) for s in f.source.all_simplices()]
                    + [("L", s) for s in f.target.all_simplices()])
        as_set = {x: frozenset(x[1]) for x in elements}
        img = {x: frozenset(f.image(x[1])) for x in elements
               if x[0] == "K"}

        def below(x, y):
            if x[0] == y[0]:
                return x != y and as_set[x] < as_set[y]
            return x[0] == "K" and y[0] == "L" and img[x] <= as_set[y]

        succ = {x: [y for y in elements if below(x, y)] for x in elements}
        found = []

        def grow(chain, x):
            chain = chain + (x,)
            found.append(chain)
            for y in succ[x]:
                grow(chain, y)

        for x in elements:
            grow((), x)
        self.complex = SimplicialComplex(found)
        self.domain = self.complex.full_subcomplex(lambda v: v[0] == "K")
        self.target = self.complex.full_subcomplex(lambda v: v[0] == "L")
        ident = {v: v for v in self.domain.vertices()}
        self.domain_inclusion = SimplicialMap(self.domain, self.complex,
                                              ident)
        ident = {v: v for v in self.target.vertices()}
        self.target_inclusion = SimplicialMap(self.target, self.complex,
                                              ident)
        retract = {}
        for v in self.complex.vertices():
            retract[v] = ("L", f.image(v[1])) if v[0] == "K" else v
        self.retraction = SimplicialMap(self.complex, self.target, retract)

    def collapse(self):
        """Collapse the target end to a point: returns (cone, xi, base)
        where cone is the cone on the domain end, xi the collapse map,
        and base the domain end inside the cone."""
        apex = ("apex",)
        cone_simplices = list(self.domain.all_simplices())
        cone_simplices.extend(s + (apex,)
                              for s in self.domain.all_simplices())
        cone_simplices.append((apex,))
        cone = SimplicialComplex(cone_simplices)
        vmap = {v: (v if v[0] == "K" else apex)
                for v in self.complex.vertices()}
        xi = SimplicialMap(self.complex, cone, vmap)
        return cone, xi, self.domain

    def __repr__(self):
        return f"Cylinder({self.map!r})"


def mapping_cylinder(f: SimplicialMap) -> Cylinder:
    """The simplicial mapping cylinder of f, with both end inclusions.

    >>> cyl = mapping_cylinder(degree_map_circle(2, 3))
    >>> len(cyl.complex.simplices(2))
    24
    """
    return Cylinder(f)


# -- Pontryagin-style stages -------------------------------------------------

def _subdivided_cycle(tri, p):
    """The 6p-gon boundary of a triangle whose edges carry 2p - 1
    interior points each.  Interior labels ('e', u, v, i) are global:
    u < v are the edge's endpoints and i counts steps from u."""
    a, b, c = tri
    cyc = [("o", a)]
    cyc.extend(("e", a, b, i) for i in range(1, 2 * p))
    cyc.append(("o", b))
    cyc.extend(("e", b, c, i) for i in range(1, 2 * p))
    cyc.append(("o", c))
    cyc.extend(("e", a, c, i) for i in range(2 * p - 1, 0, -1))
    return cyc


def _replace_triangles(l: SimplicialComplex, p):
    """One stage of triangle replacement: every 2-simplex of l becomes
    a copy of the mapping cylinder of the p-fold circle covering, glued
    along the subdivided boundary.  Returns (next stage, cone
    retriangulation of l, bonding map).
    """
    cyl = mapping_cylinder(degree_map_circle(p, 3))
    local = list(cyl.complex.all_simplices())
    interiors = [v for v in cyl.complex.vertices() if v[0] == "L"]
    n = 3 * p
    simplices = []
    cone_simplices = []
    bonding = {}
    for (v,) in l.simplices(0):
        ov = ("o", v)
        simplices.append((ov,))
        cone_simplices.append((ov,))
        bonding[ov] = ov
    for (u, v) in l.simplices(1):
        path = [("o", u)]
        path.extend(("e", u, v, i) for i in range(1, 2 * p))
        path.append(("o", v))
        for x, y in zip(path, path[1:]):
            simplices.append((x, y))
            cone_simplices.append((x, y))
        for x in path[1:-1]:
            bonding[x] = x
    for tri in l.simplices(2):
        cyc = _subdivided_cycle(tri, p)
        relabel = {}
        for i in range(n):
            relabel[("K", (i,))] = cyc[2 * i]
            j = (i + 1) % n
            edge = (i, j) if i < j else (j, i)
            relabel[("K", edge)] = cyc[2 * i + 1]
        for w in interiors:
            relabel[w] = ("c",) + tri + w[1]
        for s in local:
            simplices.append(tuple(relabel[v] for v in s))
        apex = ("a",) + tri
        for m in range(6 * p):
            cone_simplices.append((apex, cyc[m], cyc[(m + 1) % (6 * p)]))
        for w in interiors:
            bonding[relabel[w]] = apex
    nxt = SimplicialComplex(simplices)
    cone = SimplicialComplex(cone_simplices)
    return nxt, cone, SimplicialMap(nxt, cone, bonding)


def pontryagin_stage(p, k):
    """Stages L_1 .. L_{k+1} of the Pontryagin-style construction for
    the prime p, with the bonding collapses between them.

    L_1 is the boundary of the 3-simplex; each later stage replaces
    every triangle by the mapping cylinder of the p-fold circle
    covering.  The j-th bonding map goes from L_{j+1} onto a cone
    retriangulation of L_j (same underlying space).  k is limited to 2
    to keep complexes of workable size.
    """
    check_prime(p)
    if k not in (1, 2):
        raise ValueError(f"stage count must be 1 or 2: {k!r}")
    stages = [boundary_simplex(3)]
    bondings = []
    for _ in range(k):
        nxt, _, q = _replace_triangles(stages[-1], p)
        stages.append(nxt)
        bondings.append(q)
    return stages, bondings


# -- Edwards-Walsh skeleta ---------------------------------------------------

def ew_skeleton(k_complex: SimplicialComplex, group, n):
    """The Edwards-Walsh modification of the n-skeleton over Z or Z/p.

    For Z this is the n-skeleton's chain complex itself.  For Z/p one
    (n+1)-cell is glued onto each (n+1)-simplex with attaching degree
    p, killing the simplex boundary only modulo p.  Returns the chain
    complex together with the inclusion of the n-skeleton's chains.
    """
    if not (isinstance(n, int) and n >= 2):
        raise ValueError(f"Edwards-Walsh skeleta need n >= 2: {n!r}")
    skel = k_complex.skeleton(n)
    base = skel.chain_complex()
    if group is Z_GROUP:
        ident = {k: [{j: 1} for j in range(base.rank(k))]
                 for k in range(base.top + 1)}
        return base, chains.ChainMap.from_columns(base, base, ident)
    if not (isinstance(group, Zmod) and group.k == 1):
        raise ValueError(f"Edwards-Walsh groups are Z or Z/p: {group!r}")
    p = group.p
    tops = k_complex.simplices(n + 1)
    ranks = [base.rank(k) for k in range(n + 1)] + [len(tops)]
    columns = {k: base.sparse_boundary(k) for k in range(1, n + 1)
               if base.rank(k)}
    attach = []
    for s in tops:
        col = {}
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            col[skel.index(face)[1]] = p * (-1) ** i
        attach.append(col)
    columns[n + 1] = attach
    ew = chains.ChainComplex.from_columns(ranks, columns)
    ident = {k: [{j: 1} for j in range(base.rank(k))]
             for k in range(base.top + 1)}
    return ew, chains.ChainMap.from_columns(base, ew, ident)


# -- homology adapters -------------------------------------------------------

def homology_of(x: SimplicialComplex, coeff=Z_GROUP, relative_to=None):
    """Simplicial homology, absolute or of the pair (x, relative_to)."""
    sub = x.indices_of(relative_to) if relative_to is not None else None
    return chains.homology(x.chain_complex(), coeff, sub)


def cohomology_of(x: SimplicialComplex, coeff=Z_GROUP, relative_to=None):
    sub = x.indices_of(relative_to) if relative_to is not None else None
    return chains.cohomology(x.chain_complex(), coeff, sub)


def induced(f: SimplicialMap, degree, coeff=Z_GROUP, relative=None,
            cohomology=False):
    """Induced map on (co)homology, optionally of pairs.

    relative, when given, is (subcomplex of source, subcomplex of
    target); the map must carry the first into the second.  Cohomology
    reverses the arrow: the matrix maps target classes to source
    classes."""
    cm = f.chain_map()
    if relative is not None:
        a_src, a_tgt = relative
        cm = cm.quotient(f.source.indices_of(a_src),
                         f.target.indices_of(a_tgt))
    return chains.induced_map(cm, degree, coeff, cohomology)


# -- text exchange -----------------------------------------------------------

def complex_to_text(x: SimplicialComplex):
    """One simplex per line, vertices as indices into the sorted
    vertex list."""
    order = {v: i for i, v in enumerate(x.vertices())}
    lines = []
    for s in x.all_simplices():
        lines.append(" ".join(str(order[v]) for v in s))
    return "\n".join(lines) + "\n"


def complex_from_text(text):
    simplices = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        simplices.append(tuple(int(tok) for tok in line.split()))
    if not simplices:
        raise ValueError("no simplices in input")
    return SimplicialComplex(simplices)


def map_to_text(f: SimplicialMap):
    """One vertex assignment per line, as 'i -> j' in index form."""
    src = {v: i for i, v in enumerate(f.source.vertices())}
    tgt = {v: i for i, v in enumerate(f.target.vertices())}
    lines = []
    for v in f.source.vertices():
        lines.append(f"{src[v]} -> {tgt[f.vertex_map[v]]}")
    return "\n".join(lines) + "\n"


def map_from_text(text, source, target):
    sv = source.vertices()
    tv = target.vertices()
    vmap = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        left, arrow, right = line.partition("->")
        if not arrow:
            raise ValueError(f"expected 'i -> j': {line!r}")
        vmap[sv[int(left.strip())]] = tv[int(right.strip())]
    return SimplicialMap(source, target, vmap)
