"""Exact homology of finite chain complexes over Z.

The integral engine is a hand-rolled Smith normal form with unimodular
transforms; every other coefficient system (Q, Z/p^k, the Pruefer group
Z(p^inf)) is derived from the integral answer through universal
coefficients.  A separate sparse column-reduction toolkit over a field
supplies homology bases and induced maps; it stays exact and fast on
complexes far too large for dense elimination.

Boundary and chain-map matrices are stored as sparse integer columns.
Dense views are plain lists of int rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .groups import Q as Q_GROUP
from .groups import Z as Z_GROUP
from .groups import Zmod, ZpInf

__all__ = [
    "ChainComplex",
    "ChainMap",
    "GroupReport",
    "HomologyReport",
    "InducedMapReport",
    "cohomology",
    "field_betti",
    "homology",
    "induced_map",
    "integral_homology",
    "join_homology",
    "moore_space",
    "quotient_complex",
    "snf",
]


# -- integer matrices (dense helpers) ---------------------------------------

def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _zero_matrix(rows, cols):
    return [[0] * cols for _ in range(rows)]


def _snf_shaped(mat, rows, cols):
    """Smith normal form with transforms: returns (invariants, u, v).

    u (rows x rows) and v (cols x cols) are unimodular with
    u * mat * v = diag(invariants, then zeros); the invariants are
    positive and each divides the next.
    """
    a = [list(map(int, row)) for row in mat]
    u = _identity(rows)
    v = _identity(cols)

    def row_add(i, t, q):
        ai, at, ui, ut = a[i], a[t], u[i], u[t]
        for j in range(cols):
            ai[j] += q * at[j]
        for j in range(rows):
            ui[j] += q * ut[j]

    def col_add(j, t, q):
        for i in range(rows):
            a[i][j] += q * a[i][t]
        for i in range(cols):
            v[i][j] += q * v[i][t]

    def row_swap(i, t):
        a[i], a[t] = a[t], a[i]
        u[i], u[t] = u[t], u[i]

    def col_swap(j, t):
        for i in range(rows):
            a[i][j], a[i][t] = a[i][t], a[i][j]
        for i in range(cols):
            v[i][j], v[i][t] = v[i][t], v[i][j]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # Smallest nonzero entry of the remaining block becomes the pivot.
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        if a[t][t] < 0:
            row_negate(t)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t]:
                        # The remainder is a strictly smaller pivot.
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
        d = a[t][t]
        bad = None
        for i in range(t + 1, rows):
            if any(a[i][j] % d for j in range(t + 1, cols)):
                bad = i
                break
        if bad is not None:
            # Divisibility repair: fold the offending row into row t.
            row_add(t, bad, 1)
            continue
        t += 1

    invariants = [a[i][i] for i in range(min(rows, cols)) if a[i][i]]
    return invariants, u, v


def snf(mat):
    """Smith normal form of an integer matrix.

    >>> snf([[2]])[0]
    [2]
    >>> snf([[1, 0], [0, 0]])[0]
    [1]
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    return _snf_shaped(mat, rows, cols)


def _int_inverse(m):
    """Exact inverse of a unimodular integer matrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j))
                                       for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = []
    for row in a:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in tail])
    return out


# -- sparse column plumbing --------------------------------------------------

def _freeze_column(col, rows, where):
    out = []
    for i, v in sorted(col.items()):
        v = int(v)
        if not 0 <= i < rows:
            raise ValueError(f"row index {i} out of range in {where}")
        if v:
            out.append((i, v))
    return tuple(out)


def _columns_from_dense(mat, rows, cols, where):
    if len(mat) != rows or any(len(r) != cols for r in mat):
        raise ValueError(f"{where} must be {rows} x {cols}")
    out = []
    for j in range(cols):
        out.append(tuple((i, int(mat[i][j])) for i in range(rows)
                         if mat[i][j]))
    return tuple(out)


def _dense_from_columns(columns, rows, cols):
    mat = _zero_matrix(rows, cols)
    for j, col in enumerate(columns):
        for i, v in col:
            mat[i][j] = v
    return mat


def _sparse_compose(cols_low, col):
    """Apply a sparsely stored matrix to one sparse column (ints)."""
    acc = {}
    for i, v in col:
        for i2, v2 in cols_low[i]:
            w = acc.get(i2, 0) + v * v2
            if w:
                acc[i2] = w
            else:
                del acc[i2]
    return acc


# -- chain complexes ---------------------------------------------------------

class ChainComplex:
    """Finitely generated free chain complex over Z.

    ranks[k] is the rank in degree k.  Boundaries map degree k to the
    matrix of C_k -> C_{k-1} (ranks[k-1] rows, ranks[k] columns); they
    are stored sparsely and missing degrees are zero.  The square-zero
    identity is checked on construction.
    """

    __slots__ = ("ranks", "_cols")

    def __init__(self, ranks, boundaries=None):
        self.ranks = tuple(int(r) for r in ranks)
        if not self.ranks or any(r < 0 for r in self.ranks):
            raise ValueError("ranks must be a nonempty list of nonnegatives")
        self._cols = {}
        for k, mat in (boundaries or {}).items():
            self._install(k, _columns_from_dense(
                mat, self.rank(k - 1), self.rank(k), f"boundary {k}"))
        self._check_square_zero()

    @classmethod
    def from_columns(cls, ranks, columns):
        """Build from sparse data: columns[k] lists, per basis element
        of degree k, a dict from row index to integer coefficient."""
        c = cls.__new__(cls)
        c.ranks = tuple(int(r) for r in ranks)
        if not c.ranks or any(r < 0 for r in c.ranks):
            raise ValueError("ranks must be a nonempty list of nonnegatives")
        c._cols = {}
        for k, cols in columns.items():
            cols = list(cols)
            if len(cols) != c.rank(k):
                raise ValueError(f"boundary {k} needs {c.rank(k)} columns")
            frozen = tuple(_freeze_column(col, c.rank(k - 1),
                                          f"boundary {k}")
                           for col in cols)
            c._install(k, frozen)
        c._check_square_zero()
        return c

    def _install(self, k, frozen):
        if not 1 <= k <= self.top:
            raise ValueError(f"boundary degree {k} out of range")
        if any(frozen):
            self._cols[k] = frozen

    def _check_square_zero(self):
        for k in range(2, self.top + 1):
            if k in self._cols and (k - 1) in self._cols:
                below = self._cols[k - 1]
                for j, col in enumerate(self._cols[k]):
                    if _sparse_compose(below, col):
                        raise ValueError(
                            f"boundary squared is nonzero at degree {k}, "
                            f"column {j}")

    @property
    def top(self):
        return len(self.ranks) - 1

    def rank(self, k):
        if 0 <= k <= self.top:
            return self.ranks[k]
        return 0

    def sparse_boundary(self, k):
        """Columns of the boundary C_k -> C_{k-1} as fresh dicts."""
        cols = self._cols.get(k)
        if cols is None:
            return [{} for _ in range(self.rank(k))]
        return [dict(col) for col in cols]

    def boundary(self, k):
        """Dense view of the boundary matrix (mutable rows)."""
        cols = self._cols.get(k)
        rows, n = self.rank(k - 1), self.rank(k)
        if cols is None:
            return _zero_matrix(rows, n)
        return _dense_from_columns(cols, rows, n)

    def euler(self):
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks!r})"


def quotient_complex(c: ChainComplex, sub):
    """Quotient of c by a sub chain complex given as index sets.

    sub maps degree -> indices spanning the sub in that degree.  Raises
    if the span is not boundary-closed.  Returns (quotient, kept) where
    kept lists the surviving indices per degree, in order.
    """
    inside = {}
    for k, idx in sub.items():
        chosen = sorted(set(idx))
        if chosen and (chosen[0] < 0 or chosen[-1] >= c.rank(k)):
            raise ValueError(f"sub index out of range in degree {k}")
        inside[k] = set(chosen)
    for k in range(1, c.top + 1):
        cols_in = inside.get(k)
        if not cols_in:
            continue
        rows_in = inside.get(k - 1, set())
        cols = c.sparse_boundary(k)
        for j in cols_in:
            if any(i not in rows_in for i in cols[j]):
                raise ValueError(
                    f"not a subcomplex: boundary leaks in degree {k}")
    kept = {}
    ranks = []
    for k in range(c.top + 1):
        drop = inside.get(k, set())
        kept[k] = tuple(i for i in range(c.rank(k)) if i not in drop)
        ranks.append(len(kept[k]))
    renumber = {k: {i: n for n, i in enumerate(kept[k])} for k in kept}
    columns = {}
    for k in range(1, c.top + 1):
        cols = c.sparse_boundary(k)
        rows = renumber[k - 1]
        columns[k] = [{rows[i]: v for i, v in cols[j].items() if i in rows}
                      for j in kept[k]]
    return ChainComplex.from_columns(ranks, columns), kept


class ChainMap:
    """A degree-preserving map of chain complexes, checked to commute
    with the boundaries.  The degree-k matrix has target.rank(k) rows
    and source.rank(k) columns; missing degrees are zero.
    """

    __slots__ = ("source", "target", "_cols")

    def __init__(self, source, target, matrices):
        self.source = source
        self.target = target
        self._cols = {}
        for k, mat in matrices.items():
            frozen = _columns_from_dense(mat, target.rank(k),
                                         source.rank(k), f"degree {k}")
            if any(frozen):
                self._cols[k] = frozen
        self._check_commutes()

    @classmethod
    def from_columns(cls, source, target, columns):
        cm = cls.__new__(cls)
        cm.source = source
        cm.target = target
        cm._cols = {}
        for k, cols in columns.items():
            cols = list(cols)
            if len(cols) != source.rank(k):
                raise ValueError(
                    f"degree {k} needs {source.rank(k)} columns")
            frozen = tuple(_freeze_column(col, target.rank(k),
                                          f"degree {k}")
                           for col in cols)
            if any(frozen):
                cm._cols[k] = frozen
        cm._check_commutes()
        return cm

    @staticmethod
    def _empty(n):
        return tuple(() for _ in range(n))

    def _check_commutes(self):
        src, tgt = self.source, self.target
        for k in range(1, max(src.top, tgt.top) + 1):
            f_here = self._cols.get(k) or self._empty(src.rank(k))
            f_below = self._cols.get(k - 1) or self._empty(src.rank(k - 1))
            d_src = src._cols.get(k) or self._empty(src.rank(k))
            d_tgt = tgt._cols.get(k) or self._empty(tgt.rank(k))
            for j in range(src.rank(k)):
                lhs = _sparse_compose(f_below, d_src[j])
                rhs = _sparse_compose(d_tgt, f_here[j])
                if lhs != rhs:
                    raise ValueError(
                        f"chain map does not commute in degree {k}")

    def sparse_matrix(self, k):
        cols = self._cols.get(k)
        if cols is None:
            return [{} for _ in range(self.source.rank(k))]
        return [dict(col) for col in cols]

    def matrix(self, k):
        cols = self._cols.get(k)
        rows, n = self.target.rank(k), self.source.rank(k)
        if cols is None:
            return _zero_matrix(rows, n)
        return _dense_from_columns(cols, rows, n)

    def quotient(self, sub_source, sub_target):
        """The induced map of quotient complexes (map of pairs)."""
        qs, kept_s = quotient_complex(self.source, sub_source)
        qt, kept_t = quotient_complex(self.target, sub_target)
        renumber = {k: {i: n for n, i in enumerate(kept_t[k])}
                    for k in kept_t}
        columns = {}
        for k in range(self.source.top + 1):
            cols = self.sparse_matrix(k)
            rows = renumber.get(k, {})
            for j in set(sub_source.get(k, ())):
                if any(i in rows for i in cols[j]):
                    raise ValueError(
                        f"map does not send the subcomplex into the "
                        f"subcomplex in degree {k}")
            columns[k] = [{rows[i]: v for i, v in cols[j].items()
                           if i in rows}
                          for j in kept_s[k]]
        return ChainMap.from_columns(qs, qt, columns)

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


# -- integral homology and coefficient conversion ----------------------------

def integral_homology(c: ChainComplex):
    """Per degree: (free rank, invariant torsion factors > 1)."""
    rank_of = {}
    torsion_of = {}
    for k in range(1, c.top + 1):
        inv, _, _ = _snf_shaped(c.boundary(k), c.rank(k - 1), c.rank(k))
        rank_of[k] = len(inv)
        torsion_of[k] = tuple(d for d in inv if d > 1)
    out = []
    for k in range(c.top + 1):
        beta = c.rank(k) - rank_of.get(k, 0) - rank_of.get(k + 1, 0)
        out.append((beta, torsion_of.get(k + 1, ())))
    return out


def _invariant_factors(orders):
    """Canonical invariant-factor chain of a finite abelian group.

    >>> _invariant_factors([2, 3])
    (6,)
    >>> _invariant_factors([2, 4, 3])
    (2, 12)
    """
    exps = {}
    for n in orders:
        if n <= 1:
            continue
        m = n
        d = 2
        while d * d <= m:
            e = 0
            while m % d == 0:
                e += 1
                m //= d
            if e:
                exps.setdefault(d, []).append(e)
            d += 1
        if m > 1:
            exps.setdefault(m, []).append(1)
    for es in exps.values():
        es.sort()
    factors = []
    while any(exps.values()):
        f = 1
        for p, es in exps.items():
            if es:
                f *= p ** es.pop()
        factors.append(f)
    return tuple(sorted(factors))


class GroupReport:
    """A homology group, canonically presented.

    free_rank counts the full summands (Z, Q, Z/p^k or Z(p^inf)
    depending on the coefficients); orders lists the remaining finite
    cyclic invariant factors in ascending divisibility order.

    >>> GroupReport(1, (2,), Z_GROUP).render()
    'Z + Z/2'
    """

    __slots__ = ("free_rank", "orders", "coeff")

    def __init__(self, free_rank, orders, coeff):
        self.free_rank = int(free_rank)
        self.orders = _invariant_factors(orders)
        self.coeff = coeff

    @property
    def is_zero(self):
        return self.free_rank == 0 and not self.orders

    def __eq__(self, other):
        if not isinstance(other, GroupReport):
            return NotImplemented
        return (self.free_rank, self.orders, self.coeff) == (
            other.free_rank, other.orders, other.coeff)

    def __hash__(self):
        return hash((self.free_rank, self.orders, self.coeff))

    def _symbol(self):
        if self.coeff is Z_GROUP:
            return "Z"
        if self.coeff is Q_GROUP:
            return "Q"
        return self.coeff.render()

    def render(self):
        parts = [self._symbol()] * self.free_rank
        parts.extend(f"Z/{n}" for n in self.orders)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return (f"GroupReport({self.free_rank}, {self.orders!r}, "
                f"{self.coeff!r})")


class HomologyReport:
    """All homology groups of one computation, indexed by degree."""

    __slots__ = ("groups", "coeff", "variance", "reduced")

    def __init__(self, groups, coeff, variance="homology", reduced=False):
        self.groups = dict(groups)
        self.coeff = coeff
        self.variance = variance
        self.reduced = reduced

    def __getitem__(self, k):
        if k in self.groups:
            return self.groups[k]
        return GroupReport(0, (), self.coeff)

    def degrees(self):
        return sorted(self.groups)

    def render(self):
        head = "H^" if self.variance == "cohomology" else "H_"
        return "\n".join(f"{head}{k} = {self[k].render()}"
                         for k in self.degrees())

    def __repr__(self):
        body = {k: self[k].render() for k in self.degrees()}
        return f"HomologyReport({body!r})"


def _p_part(t, p):
    out = 1
    while t % p == 0:
        out *= p
        t //= p
    return out


def _check_coeff(coeff):
    if coeff is Z_GROUP or coeff is Q_GROUP:
        return coeff
    if isinstance(coeff, (Zmod, ZpInf)):
        return coeff
    raise ValueError(f"unsupported coefficients: {coeff!r}")


def _convert(pair, below, coeff):
    """Universal coefficients in one degree of homology:
    H_k(G) = (H_k tensor G) + Tor(H_{k-1}, G)."""
    beta, tors = pair
    _, tors_below = below
    if coeff is Z_GROUP:
        return GroupReport(beta, tors, coeff)
    if coeff is Q_GROUP:
        return GroupReport(beta, (), coeff)
    if isinstance(coeff, Zmod):
        m = coeff.p ** coeff.k
        orders = [m] * beta
        orders.extend(gcd(t, m) for t in tors)
        orders.extend(gcd(t, m) for t in tors_below)
        return GroupReport(0, orders, coeff)
    # Divisible coefficients kill the tensor torsion; Tor keeps p-parts.
    orders = [_p_part(t, coeff.p) for t in tors_below]
    return GroupReport(beta, orders, coeff)


def _convert_dual(pair, below, coeff):
    """Cohomology via Hom and Ext out of the integral homology."""
    beta, tors = pair
    _, tors_below = below
    if coeff is Z_GROUP:
        return GroupReport(beta, tors_below, coeff)
    if coeff is Q_GROUP:
        return GroupReport(beta, (), coeff)
    if isinstance(coeff, Zmod):
        m = coeff.p ** coeff.k
        orders = [m] * beta
        orders.extend(gcd(t, m) for t in tors)
        orders.extend(gcd(t, m) for t in tors_below)
        return GroupReport(0, orders, coeff)
    # Divisible coefficients are injective, so Ext vanishes.
    orders = [_p_part(t, coeff.p) for t in tors]
    return GroupReport(beta, orders, coeff)


def _is_field(coeff):
    return coeff is Q_GROUP or (isinstance(coeff, Zmod) and coeff.k == 1)


def _field_groups(c, coeff):
    # Over a field the Betti numbers say everything, and the sparse
    # column reduction stays cheap on complexes too large for the
    # Smith-normal-form route.
    betti = field_betti(c, coeff)
    if coeff is Q_GROUP:
        return {k: GroupReport(b, (), coeff) for k, b in enumerate(betti)}
    return {k: GroupReport(0, (coeff.p,) * b, coeff)
            for k, b in enumerate(betti)}


def homology(c: ChainComplex, coeff=Z_GROUP, relative_to=None):
    """Homology of c, or of the pair when relative_to gives the
    subcomplex by basis indices per degree."""
    coeff = _check_coeff(coeff)
    if relative_to is not None:
        c, _ = quotient_complex(c, relative_to)
    if _is_field(coeff):
        return HomologyReport(_field_groups(c, coeff), coeff)
    pairs = integral_homology(c)
    zero = (0, ())
    groups = {}
    for k in range(c.top + 1):
        below = pairs[k - 1] if k else zero
        groups[k] = _convert(pairs[k], below, coeff)
    return HomologyReport(groups, coeff)


def cohomology(c: ChainComplex, coeff=Z_GROUP, relative_to=None):
    coeff = _check_coeff(coeff)
    if relative_to is not None:
        c, _ = quotient_complex(c, relative_to)
    if _is_field(coeff):
        # Hom duality over a field keeps the dimensions.
        return HomologyReport(_field_groups(c, coeff), coeff,
                              variance="cohomology")
    pairs = integral_homology(c)
    zero = (0, ())
    groups = {}
    for k in range(c.top + 1):
        below = pairs[k - 1] if k else zero
        groups[k] = _convert_dual(pairs[k], below, coeff)
    return HomologyReport(groups, coeff, variance="cohomology")


# -- field linear algebra (sparse columns) -----------------------------------

class _GF:
    __slots__ = ("p",)

    def __init__(self, p):
        self.p = p

    @property
    def one(self):
        return 1

    def of(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        return (a * pow(b, self.p - 2, self.p)) % self.p


class _QF:
    __slots__ = ()

    @property
    def one(self):
        return Fraction(1)

    def of(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b


def field_for(coeff):
    if coeff is Q_GROUP:
        return _QF()
    if isinstance(coeff, Zmod) and coeff.k == 1:
        return _GF(coeff.p)
    raise ValueError(f"not field coefficients: {coeff!r}")


def _field_columns(int_cols, fld):
    out = []
    for col in int_cols:
        fc = {}
        for i, v in col.items():
            w = fld.of(v)
            if w:
                fc[i] = w
        out.append(fc)
    return out


def _axpy(target, factor, source, fld):
    # target <- target - factor * source
    zero = fld.of(0)
    for i, v in source.items():
        w = fld.add(target.get(i, zero), fld.neg(fld.mul(factor, v)))
        if w:
            target[i] = w
        else:
            target.pop(i, None)


class _ReducedSet:
    """Columns kept with distinct pivot rows, each carrying homology
    coordinates.  Image columns have class zero; representative cycles
    carry a standard basis vector; express() writes any later cycle in
    terms of the representatives.
    """

    __slots__ = ("fld", "by_low")

    def __init__(self, fld):
        self.fld = fld
        self.by_low = {}

    def _drain(self, vec, coords):
        fld = self.fld
        zero = fld.of(0)
        while vec:
            low = max(vec)
            owner = self.by_low.get(low)
            if owner is None:
                return vec
            ovec, ocoords = owner
            factor = fld.div(vec[low], ovec[low])
            _axpy(vec, factor, ovec, fld)
            for j, cv in ocoords.items():
                w = fld.add(coords.get(j, zero),
                            fld.neg(fld.mul(factor, cv)))
                if w:
                    coords[j] = w
                else:
                    coords.pop(j, None)
        return vec

    def add_image(self, vec):
        vec = self._drain(dict(vec), {})
        if vec:
            self.by_low[max(vec)] = (vec, {})
            return True
        return False

    def add_representative(self, vec, index):
        coords = {index: self.fld.one}
        vec = self._drain(dict(vec), coords)
        if vec:
            self.by_low[max(vec)] = (vec, coords)
            return True
        return False

    def express(self, vec):
        """Class of a cycle in representative coordinates."""
        coords = {}
        vec = self._drain(dict(vec), coords)
        if vec:
            raise ValueError("vector is not a cycle in this degree")
        return {j: self.fld.neg(v) for j, v in coords.items()}


def _kernel_columns(cols, fld):
    """Kernel basis via left-to-right column reduction."""
    by_low = {}
    kernel = []
    for j, col in enumerate(cols):
        vec = dict(col)
        combo = {j: fld.one}
        while vec:
            low = max(vec)
            if low not in by_low:
                break
            ovec, ocombo = by_low[low]
            factor = fld.div(vec[low], ovec[low])
            _axpy(vec, factor, ovec, fld)
            _axpy(combo, factor, ocombo, fld)
        if vec:
            by_low[max(vec)] = (vec, combo)
        else:
            kernel.append(combo)
    return kernel, by_low


class _HomologyBasis:
    __slots__ = ("space", "reps", "dim")

    def __init__(self, space, reps):
        self.space = space
        self.reps = reps
        self.dim = len(reps)


def _field_basis(c: ChainComplex, k, fld):
    """Basis of H_k(c; field): representative cycles plus the reduced
    data needed to take coordinates of any other cycle."""
    here = c.rank(k)
    if k >= 1:
        d_k = _field_columns(c.sparse_boundary(k), fld)
        kernel, _ = _kernel_columns(d_k, fld)
    else:
        kernel = [{j: fld.one} for j in range(here)]
    space = _ReducedSet(fld)
    if k + 1 <= c.top:
        for col in _field_columns(c.sparse_boundary(k + 1), fld):
            if col:
                space.add_image(col)
    reps = []
    for combo in kernel:
        if space.add_representative(combo, len(reps)):
            reps.append(combo)
    return _HomologyBasis(space, reps)


def field_betti(c: ChainComplex, coeff):
    """Field Betti numbers by direct rank computation, independent of
    the Smith-normal-form route."""
    fld = field_for(coeff)
    ranks = {}
    for k in range(1, c.top + 1):
        cols = _field_columns(c.sparse_boundary(k), fld)
        kernel, _ = _kernel_columns(cols, fld)
        ranks[k] = c.rank(k) - len(kernel)
    return [c.rank(k) - ranks.get(k, 0) - ranks.get(k + 1, 0)
            for k in range(c.top + 1)]


def _matvec_columns(cols, vec, fld):
    zero = fld.of(0)
    out = {}
    for j, v in vec.items():
        for i, entry in cols[j].items():
            w = fld.add(out.get(i, zero), fld.mul(entry, v))
            if w:
                out[i] = w
            else:
                out.pop(i, None)
    return out


# -- induced maps ------------------------------------------------------------

class InducedMapReport:
    """The matrix of an induced (co)homology map plus its rank flags."""

    __slots__ = ("matrix", "injective", "surjective", "iso", "degree",
                 "coeff", "variance")

    def __init__(self, matrix, injective, surjective, degree, coeff,
                 variance):
        self.matrix = tuple(tuple(row) for row in matrix)
        self.injective = bool(injective)
        self.surjective = bool(surjective)
        self.iso = self.injective and self.surjective
        self.degree = degree
        self.coeff = coeff
        self.variance = variance

    def __repr__(self):
        return (f"InducedMapReport(matrix={self.matrix!r}, "
                f"injective={self.injective}, "
                f"surjective={self.surjective})")

    def render(self):
        if self.iso:
            flags = ["iso"]
        else:
            flags = []
            if self.injective:
                flags.append("mono")
            if self.surjective:
                flags.append("epi")
            if not flags:
                flags.append("neither mono nor epi")
        rows = [" ".join(str(x) for x in row) for row in self.matrix]
        return f"[{'; '.join(rows)}] ({', '.join(flags)})"


def _dense_rank(mat, fld):
    a = [list(row) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    row = 0
    for col in range(cols):
        piv = next((i for i in range(row, rows) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        lead = a[row][col]
        for i in range(rows):
            if i != row and a[i][col]:
                factor = fld.div(a[i][col], lead)
                a[i] = [fld.add(x, fld.neg(fld.mul(factor, y)))
                        for x, y in zip(a[i], a[row])]
        row += 1
        rank += 1
        if row == rows:
            break
    return rank


def _field_induced(cm: ChainMap, degree, coeff, dual):
    fld = field_for(coeff)
    basis_s = _field_basis(cm.source, degree, fld)
    basis_t = _field_basis(cm.target, degree, fld)
    cols = _field_columns(cm.sparse_matrix(degree), fld)
    zero = fld.of(0)
    columns = []
    for rep in basis_s.reps:
        image = _matvec_columns(cols, rep, fld)
        coords = basis_t.space.express(image)
        columns.append([coords.get(i, zero) for i in range(basis_t.dim)])
    hom = [[columns[j][i] for j in range(basis_s.dim)]
           for i in range(basis_t.dim)]
    if dual:
        out = [[hom[i][j] for i in range(basis_t.dim)]
               for j in range(basis_s.dim)]
        rank = _dense_rank(out, fld)
        return InducedMapReport(out, rank == basis_t.dim,
                                rank == basis_s.dim, degree, coeff,
                                "cohomology")
    rank = _dense_rank(hom, fld)
    return InducedMapReport(hom, rank == basis_s.dim,
                            rank == basis_t.dim, degree, coeff,
                            "homology")


def _integral_free_basis(c: ChainComplex, k):
    """Chains giving a basis of H_k over Z, requiring H_k torsion-free.

    Returns (basis chains, coordinate function)."""
    inv_k, _, v_k = _snf_shaped(c.boundary(k), c.rank(k - 1), c.rank(k))
    r = len(inv_k)
    n = c.rank(k)
    m = n - r
    kernel = [[v_k[i][j] for j in range(r, n)] for i in range(n)]
    inv_kk, u_kk, v_kk = _snf_shaped(kernel, n, m)
    if len(inv_kk) != m or any(d != 1 for d in inv_kk):
        raise RuntimeError("kernel basis is not a direct summand")

    def kernel_coords(w):
        uw = [sum(u_kk[i][t] * w[t] for t in range(n)) for i in range(n)]
        if any(uw[m:]):
            raise ValueError("chain is not a cycle")
        return [sum(v_kk[i][t] * uw[t] for t in range(m))
                for i in range(m)]

    d_up = c.boundary(k + 1)
    up = c.rank(k + 1)
    image_cols = [kernel_coords([d_up[i][j] for i in range(n)])
                  for j in range(up)]
    b = ([[image_cols[j][i] for j in range(up)] for i in range(m)]
         if up else _zero_matrix(m, 0))
    inv_b, u_b, _ = _snf_shaped(b, m, up)
    if any(d != 1 for d in inv_b):
        raise ValueError(
            "integral induced maps need torsion-free homology; "
            "use field coefficients")
    rb = len(inv_b)
    u_b_inv = _int_inverse(u_b)
    free = []
    for j in range(rb, m):
        coords = [u_b_inv[i][j] for i in range(m)]
        free.append([sum(kernel[i][t] * coords[t] for t in range(m))
                     for i in range(n)])

    def free_coords(w):
        y = kernel_coords(w)
        z = [sum(u_b[i][t] * y[t] for t in range(m)) for i in range(m)]
        return z[rb:]

    return free, free_coords


def _integral_induced(cm: ChainMap, degree, dual):
    if dual:
        raise ValueError("integral induced maps are reported on homology; "
                         "dualize with field coefficients")
    basis_s, _ = _integral_free_basis(cm.source, degree)
    basis_t, coords_t = _integral_free_basis(cm.target, degree)
    mat = cm.matrix(degree)
    rows_t = cm.target.rank(degree)
    columns = []
    for chain in basis_s:
        image = [sum(mat[i][t] * chain[t] for t in range(len(chain)))
                 for i in range(rows_t)]
        columns.append(coords_t(image))
    out = [[columns[j][i] for j in range(len(basis_s))]
           for i in range(len(basis_t))]
    inv, _, _ = _snf_shaped(out, len(basis_t), len(basis_s))
    injective = len(inv) == len(basis_s)
    surjective = len(inv) == len(basis_t) and all(d == 1 for d in inv)
    return InducedMapReport(out, injective, surjective, degree, Z_GROUP,
                            "homology")


def induced_map(cm: ChainMap, degree, coeff=Z_GROUP, cohomology=False):
    """Induced map on (co)homology in one degree.

    Field coefficients (Q or Z/p) work for arbitrary homology; integral
    coefficients need the degree's homology torsion-free on both sides.
    Cohomology matrices are the transposes, with flags recomputed for
    the reversed direction.
    """
    coeff = _check_coeff(coeff)
    if coeff is Z_GROUP:
        return _integral_induced(cm, degree, cohomology)
    return _field_induced(cm, degree, coeff, cohomology)


# -- standard small complexes ------------------------------------------------

def moore_space(m, n=1) -> ChainComplex:
    """Cellular chains of the Moore space M(Z/m, n): one cell each in
    degrees 0, n and n+1, the top cell attached with degree m.

    >>> homology(moore_space(2, 1))[1].render()
    'Z/2'
    """
    if not (isinstance(m, int) and m >= 2):
        raise ValueError(f"Moore space needs m >= 2: {m!r}")
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"Moore space needs n >= 1: {n!r}")
    ranks = [0] * (n + 2)
    ranks[0] = 1
    ranks[n] = 1
    ranks[n + 1] = 1
    return ChainComplex(ranks, {n + 1: [[m]]})


def _tensor_pair(a, b):
    r1, t1 = a
    r2, t2 = b
    orders = list(t2) * r1 + list(t1) * r2
    orders.extend(gcd(x, y) for x in t1 for y in t2)
    return (r1 * r2, tuple(o for o in orders if o > 1))


def _tor_pair(a, b):
    _, t1 = a
    _, t2 = b
    orders = tuple(g for g in (gcd(x, y) for x in t1 for y in t2) if g > 1)
    return (0, orders)


def _merge(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _reduced_pairs(c: ChainComplex):
    pairs = integral_homology(c)
    beta0, tors0 = pairs[0]
    if c.rank(0) == 0 or beta0 < 1:
        raise ValueError("join needs nonempty complexes")
    return [(beta0 - 1, tors0)] + pairs[1:]


def join_homology(k: ChainComplex, l: ChainComplex, coeff=Z_GROUP):
    """Reduced homology of the join, via the suspension of the smash:
    degree i collects tensor terms over a + b = i - 1 and torsion
    products over a + b = i - 2 of the reduced integral homologies,
    then converts coefficients."""
    coeff = _check_coeff(coeff)
    pa = _reduced_pairs(k)
    pb = _reduced_pairs(l)
    top = (len(pa) - 1) + (len(pb) - 1) + 1
    zero = (0, ())
    joined = []
    for i in range(top + 1):
        acc = zero
        for a in range(len(pa)):
            b = i - 1 - a
            if 0 <= b < len(pb):
                acc = _merge(acc, _tensor_pair(pa[a], pb[b]))
            b = i - 2 - a
            if 0 <= b < len(pb):
                acc = _merge(acc, _tor_pair(pa[a], pb[b]))
        joined.append(acc)
    groups = {}
    for i in range(top + 1):
        below = joined[i - 1] if i else zero
        groups[i] = _convert(joined[i], below, coeff)
    return HomologyReport(groups, coeff, reduced=True)
