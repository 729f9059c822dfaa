"""The dimension-type algebra: triples (S, D; d) and Bockstein functions.

A cd-type is either the zero type (points and other 0-dimensional
things) or a triple of a singularity prime set S, a deficiency prime
set D inside S, and a field dimension function d on the primes plus a
slot at 0, constant equal to d(0) outside S.  The dual coordinate
system is the Bockstein function phi giving, per prime p, the values at
Z/p, Z(p^inf) and Z_(p), plus one value at Q; the two determine each
other (to_phi / from_phi below).

Operations: [+] (product of compacta), [x] (a formal multiplication),
wedge (pointwise max of phi), norm (the integral dimension), inferior
norm, conjugation, the partial order, the Kuzminov basis Phi(G, n), and
the wedge decomposition of an arbitrary positive type over that basis.
"""

from __future__ import annotations

from .primes import (
    ALL_PRIMES,
    EMPTY,
    INF,
    PrimeFn,
    PrimeSet,
    check_prime,
    indicator,
    is_finite,
    select,
    value_from_json,
    value_to_json,
)

__all__ = [
    "Basis",
    "BocksteinFn",
    "CdType",
    "Decomposition",
    "UniformFamily",
    "ZERO_TYPE",
    "nat",
    "phi_basis",
    "validate",
]

BI_RULES = (
    ("BI1", "phi(Zpinf) <= phi(Zp)"),
    ("BI2", "phi(Zp) <= phi(Zpinf) + 1"),
    ("BI3", "phi(Zp) <= phi(Zloc)"),
    ("BI4", "phi(Q) <= phi(Zloc)"),
    ("BI5", "phi(Zloc) <= max(phi(Q), phi(Zpinf) + 1)"),
    ("BI6", "phi(Zpinf) <= max(phi(Q), phi(Zloc) - 1)"),
)


class BocksteinFn:
    """Values of a dimension type on the Bockstein basis.

    phi_q is the value at Q; zp, zpinf, zloc are PrimeFns whose 0 slots
    are normalized to phi_q so that pointwise operations and comparisons
    can treat all four coordinates uniformly.
    """

    __slots__ = ("phi_q", "zp", "zpinf", "zloc")

    def __init__(self, phi_q, zp, zpinf, zloc):
        self.phi_q = phi_q
        self.zp = PrimeFn(phi_q, zp.default, zp.exceptions)
        self.zpinf = PrimeFn(phi_q, zpinf.default, zpinf.exceptions)
        self.zloc = PrimeFn(phi_q, zloc.default, zloc.exceptions)

    @classmethod
    def constant(cls, value):
        f = PrimeFn.constant(value)
        return cls(value, f, f, f)

    def __eq__(self, other):
        if not isinstance(other, BocksteinFn):
            return NotImplemented
        return (self.phi_q, self.zp, self.zpinf, self.zloc) == (
            other.phi_q, other.zp, other.zpinf, other.zloc)

    def __hash__(self):
        return hash((self.phi_q, self.zp, self.zpinf, self.zloc))

    def __repr__(self):
        return (f"BocksteinFn(phi_q={self.phi_q!r}, zp={self.zp!r}, "
                f"zpinf={self.zpinf!r}, zloc={self.zloc!r})")

    def at(self, p):
        """The triple (phi(Zloc), phi(Zp), phi(Zpinf)) at a prime."""
        return (self.zloc(p), self.zp(p), self.zpinf(p))

    def sup(self):
        return max(self.phi_q, self.zp.sup(), self.zpinf.sup(), self.zloc.sup())

    def inf(self):
        return min(self.phi_q, self.zp.inf(), self.zpinf.inf(), self.zloc.inf())

    def max_with(self, other):
        return BocksteinFn(
            max(self.phi_q, other.phi_q),
            self.zp.max_with(other.zp),
            self.zpinf.max_with(other.zpinf),
            self.zloc.max_with(other.zloc),
        )

    def leq(self, other):
        return (self.phi_q <= other.phi_q
                and self.zp.leq(other.zp)
                and self.zpinf.leq(other.zpinf)
                and self.zloc.leq(other.zloc))


def _check_region(violations, where, a, b, c, v0):
    # a = phi(Zloc), b = phi(Zp), c = phi(Zpinf) at one prime region.
    checks = (
        ("BI1", c <= b),
        ("BI2", b <= c + 1),
        ("BI3", b <= a),
        ("BI4", v0 <= a),
        ("BI5", a <= max(v0, c + 1)),
        ("BI6", c <= max(v0, a - 1)),
    )
    for name, ok in checks:
        if not ok:
            violations.append((name, where))


def validate(phi: BocksteinFn):
    """All Bockstein inequality violations of phi, as (rule, slot) pairs.

    An empty list means phi is a valid Bockstein function.  The default
    region (all primes off the exceptions) is checked once under the
    slot name "default".
    """
    violations = []
    v0 = phi.phi_q
    _check_region(violations, "default",
                  phi.zloc.default, phi.zp.default, phi.zpinf.default, v0)
    primes = sorted({*phi.zp.exception_primes, *phi.zpinf.exception_primes,
                     *phi.zloc.exception_primes})
    for p in primes:
        a, b, c = phi.at(p)
        _check_region(violations, p, a, b, c, v0)
    return violations


class CdType:
    """A dimension type: the zero type or a triple (S, D; d).

    Use the factories: CdType.triple(...), nat(n), phi_basis(...),
    and the module constant ZERO_TYPE.  Values of d may be extended
    (negative or INF); is_positive tells whether the type lies in the
    positive class, where every basis value is at least 1.
    """

    __slots__ = ("zero", "S", "D", "d")

    def __init__(self, zero, S=None, D=None, d=None):
        self.zero = zero
        self.S = S
        self.D = D
        self.d = d

    @classmethod
    def triple(cls, S: PrimeSet, D: PrimeSet, d: PrimeFn):
        """Build and check a triple; the all-zero triple collapses to ZERO_TYPE."""
        if not (D - S).is_empty:
            raise ValueError(f"D must lie inside S; offending {(D - S).render()}")
        comp = ~S
        if comp.is_finite:
            for p in comp.primes:
                if d._value(p) != d.at_zero:
                    raise ValueError(
                        f"d({p}) = {d._value(p)!r} must equal d(0) = "
                        f"{d.at_zero!r} outside S")
        else:
            if d.default != d.at_zero:
                raise ValueError(
                    f"default d = {d.default!r} must equal d(0) = "
                    f"{d.at_zero!r} outside S")
            for p in d.exception_primes:
                if p not in S:
                    raise ValueError(
                        f"d({p}) = {d._value(p)!r} must equal d(0) = "
                        f"{d.at_zero!r} outside S")
        if S.is_empty and D.is_empty and d == PrimeFn.constant(0):
            return ZERO_TYPE
        return cls(False, S, D, d)

    def __eq__(self, other):
        if not isinstance(other, CdType):
            return NotImplemented
        if self.zero or other.zero:
            return self.zero == other.zero
        return (self.S, self.D, self.d) == (other.S, other.D, other.d)

    def __hash__(self):
        if self.zero:
            return hash("zero cd-type")
        return hash((self.S, self.D, self.d))

    def __repr__(self):
        if self.zero:
            return "CdType.zero()"
        return f"CdType.triple({self.S!r}, {self.D!r}, {self.d!r})"

    @classmethod
    def zero_type(cls):
        return ZERO_TYPE

    @property
    def is_positive(self):
        """Membership in the positive class: every phi value at least 1."""
        if self.zero:
            return False
        phi = self.to_phi()
        return phi.inf() >= 1

    @property
    def is_finite(self):
        if self.zero:
            return True
        return all(is_finite(v) for v in
                   (self.d.at_zero, self.d.default,
                    *(v for _, v in self.d.exceptions)))

    def to_phi(self) -> BocksteinFn:
        """The Bockstein function of this type.

        phi(Q) = d(0); phi(Zp) = d(p); phi(Zpinf) = d(p) - chi_D(p);
        phi(Zloc) = d(0) off S and max(d(0), d(p) - chi_D(p) + 1) on S.
        """
        if self.zero:
            return BocksteinFn.constant(0)
        d0 = self.d.at_zero
        zpinf = self.d.sub(indicator(self.D))
        const0 = PrimeFn.constant(d0)
        on_s = zpinf.map(lambda v: v + 1).max_with(const0)
        zloc = select(self.S, on_s, const0)
        return BocksteinFn(d0, self.d, zpinf, zloc)

    @classmethod
    def from_phi(cls, phi: BocksteinFn) -> "CdType":
        """Invert to_phi on a valid Bockstein function.

        S is where Z_(p) and Z(p^inf) values split (the singular
        primes), D is where Z/p and Z(p^inf) split (the deficient
        ones), and d is read off the field slots.
        """
        bad = validate(phi)
        if bad:
            raise ValueError(f"invalid Bockstein function: {bad}")
        s = phi.zloc.differ(phi.zpinf)
        dset = phi.zp.differ(phi.zpinf)
        d = PrimeFn(phi.phi_q, phi.zp.default, phi.zp.exceptions)
        return cls.triple(s, dset, d)

    # -- algebra ---------------------------------------------------------

    def sum(self, other: "CdType") -> "CdType":
        """The operation [+]; the type of a product of compacta."""
        if self.zero:
            return other
        if other.zero:
            return self
        return CdType.triple(
            self.S | other.S, self.D | other.D, self.d.add(other.d))

    def times(self, other: "CdType") -> "CdType":
        """The formal operation [x] of the type algebra."""
        if self.zero or other.zero:
            return ZERO_TYPE
        a0, b0 = self.d.at_zero, other.d.at_zero
        ea = self.d.map(lambda v: v - a0)
        eb = other.d.map(lambda v: v - b0)
        prod = ea.mul(eb)
        const = a0 * b0
        return CdType.triple(
            self.S & other.S, self.D & other.D,
            prod.map(lambda v: v + const))

    def wedge(self, other: "CdType") -> "CdType":
        """Pointwise max of the two Bockstein functions."""
        if self.zero:
            return other
        if other.zero:
            return self
        return CdType.from_phi(self.to_phi().max_with(other.to_phi()))

    def scale(self, k: int) -> "CdType":
        """The k-fold sum [+] of this type with itself."""
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"scale needs an integer k >= 1: {k!r}")
        if self.zero:
            return self
        return CdType.triple(self.S, self.D, self.d.map(lambda v: v * k))

    def norm(self):
        """sup over primes and 0 of d + chi_{S-D}; the integral dimension."""
        if self.zero:
            return 0
        return self.d.add(indicator(self.S - self.D)).sup()

    def inferior_norm(self):
        """min over primes and 0 of d - chi_D; the least phi value."""
        if self.zero:
            return 0
        return self.d.sub(indicator(self.D)).inf()

    def conjugate(self) -> "CdType":
        """The conjugate (S, S - D; -d); defined for finite d only."""
        if self.zero:
            return self
        if not self.is_finite:
            raise ValueError("conjugation needs finite d values")
        return CdType.triple(self.S, self.S - self.D,
                             self.d.map(lambda v: -v))

    def leq(self, other: "CdType") -> bool:
        """The partial order: pointwise on Bockstein functions."""
        return self.to_phi().leq(other.to_phi())

    # -- serialization ---------------------------------------------------

    def to_json(self):
        if self.zero:
            return {"kind": "cdtype", "zero": True}
        return {
            "kind": "cdtype",
            "zero": False,
            "S": self.S.to_json(),
            "D": self.D.to_json(),
            "d": self.d.to_json(),
        }

    @classmethod
    def from_json(cls, obj):
        if obj.get("kind") != "cdtype":
            raise ValueError("not a cd-type object")
        if obj.get("zero"):
            return ZERO_TYPE
        return cls.triple(
            PrimeSet.from_json(obj["S"]),
            PrimeSet.from_json(obj["D"]),
            PrimeFn.from_json(obj["d"]),
        )

    def render(self):
        """Surface syntax that the expression parser accepts back."""
        if self.zero:
            return "nat(0)"
        if (self.S.is_empty and self.D.is_empty and not self.d.exceptions
                and self.d.at_zero == self.d.default
                and isinstance(self.d.default, int) and self.d.default >= 1):
            return f"nat({self.d.default})"
        pieces = [f"zero: {value_to_json(self.d.at_zero)}",
                  f"default: {value_to_json(self.d.default)}"]
        pieces.extend(f"{p}: {value_to_json(v)}" for p, v in self.d.exceptions)
        return ("triple(S=%s, D=%s, d={%s})"
                % (self.S.render(), self.D.render(), ", ".join(pieces)))


ZERO_TYPE = CdType(True)


def nat(n) -> CdType:
    """The type (0, 0; n) of n-cubes; nat(0) is the zero type."""
    if n == 0:
        return ZERO_TYPE
    if not (n is INF or (isinstance(n, int) and n >= 1)):
        raise ValueError(f"nat needs an integer n >= 0 or INF: {n!r}")
    return CdType.triple(EMPTY, EMPTY, PrimeFn.constant(n))


class Basis:
    """A Bockstein basis element: Q, Zp(p), ZpInf(p) or Zloc(p)."""

    __slots__ = ("kind", "p")
    KINDS = ("Q", "Zp", "ZpInf", "Zloc")

    def __init__(self, kind, p=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown basis kind: {kind!r}")
        if kind == "Q":
            if p is not None:
                raise ValueError("Q takes no prime")
        else:
            p = check_prime(p)
        self.kind = kind
        self.p = p

    @classmethod
    def q(cls):
        return cls("Q")

    @classmethod
    def zp(cls, p):
        return cls("Zp", p)

    @classmethod
    def zpinf(cls, p):
        return cls("ZpInf", p)

    @classmethod
    def zloc(cls, p):
        return cls("Zloc", p)

    def __eq__(self, other):
        if not isinstance(other, Basis):
            return NotImplemented
        return (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"Basis({self.kind!r})" if self.p is None \
            else f"Basis({self.kind!r}, {self.p})"

    def render(self):
        return {"Q": "Q", "Zp": f"Zp({self.p})",
                "ZpInf": f"Zpinf({self.p})",
                "Zloc": f"Zloc({self.p})"}[self.kind]


def phi_basis(basis: Basis, n) -> CdType:
    """The Kuzminov basis type Phi(G, n); Phi(G, 1) is the 1-type.

    For n >= 2:
        Phi(Q, n)      = (all, {};  d(0)=n, d=1)
        Phi(Zloc(p),n) = (all-{p}, {}; d(0)=n, d(p)=n, d=1)
        Phi(Zp(p), n)  = ({p}, {p}; d(0)=1, d(p)=n, d=1)
        Phi(Zpinf(p),n)= ({p}, {};  d(0)=1, d(p)=n-1, d=1)
    """
    if not (n is INF or (isinstance(n, int) and n >= 1)):
        raise ValueError(f"Phi needs n >= 1: {n!r}")
    if n == 1:
        return nat(1)
    p = basis.p
    if basis.kind == "Q":
        return CdType.triple(ALL_PRIMES, EMPTY, PrimeFn(n, 1))
    if basis.kind == "Zloc":
        return CdType.triple(PrimeSet.all_except(p), EMPTY,
                             PrimeFn(n, 1, [(p, n)]))
    if basis.kind == "Zp":
        return CdType.triple(PrimeSet.of(p), PrimeSet.of(p),
                             PrimeFn(1, 1, [(p, n)]))
    if basis.kind == "ZpInf":
        return CdType.triple(PrimeSet.of(p), EMPTY,
                             PrimeFn(1, 1, [(p, n - 1)]))
    raise ValueError(f"unknown basis kind: {basis.kind!r}")


class UniformFamily:
    """A prime-indexed family {Phi(kind(p), n) : p in over}.

    kind is "Zp", "ZpInf" or "Zloc"; finitely many families plus
    finitely many explicit types are all a wedge ever needs here.
    """

    __slots__ = ("kind", "n", "over")

    def __init__(self, kind, n, over: PrimeSet):
        if kind not in ("Zp", "ZpInf", "Zloc"):
            raise ValueError(f"not a prime-indexed basis kind: {kind!r}")
        if not (n is INF or (isinstance(n, int) and n >= 1)):
            raise ValueError(f"family needs n >= 1: {n!r}")
        self.kind = kind
        self.n = n
        self.over = over

    def __repr__(self):
        return f"UniformFamily({self.kind!r}, {self.n!r}, {self.over!r})"

    def phi_profiles(self):
        """(own, other, at_q): per-slot values of one member at its own
        prime, at any other prime, and at Q.  Slot order (zloc, zp, zpinf).
        """
        n = self.n
        if self.kind == "Zloc":
            return (n, n, n), (n, 1, 1), n
        if self.kind == "Zp":
            return (n, n, n - 1), (1, 1, 1), 1
        return (n, n - 1, n - 1), (1, 1, 1), 1


def _family_phi(fam: UniformFamily) -> BocksteinFn:
    # The pointwise max of the family's members.  At a prime inside the
    # index set both the own-prime profile and (when another member
    # exists) the other-prime profile compete; outside only the latter.
    own, other, at_q = fam.phi_profiles()
    single = fam.over.is_finite and len(fam.over.primes) == 1
    inside = own if single else tuple(max(o, t) for o, t in zip(own, other))
    fns = []
    for i in range(3):
        fns.append(select(fam.over,
                          PrimeFn.constant(inside[i]),
                          PrimeFn.constant(other[i])))
    return BocksteinFn(at_q, fns[1], fns[2], fns[0])


def wedge_family(explicit=(), families=()) -> CdType:
    """Wedge of finitely many types and uniform prime-indexed families.

    The wedge of nothing is the zero type.  Families over empty sets
    contribute nothing; singleton families are just their one member.
    """
    phi = None
    for t in explicit:
        if t.zero:
            continue
        tphi = t.to_phi()
        phi = tphi if phi is None else phi.max_with(tphi)
    for fam in families:
        if fam.over.is_empty:
            continue
        if fam.n == 1:
            fphi = BocksteinFn.constant(1)
        elif fam.over.is_finite and len(fam.over.primes) == 1:
            fphi = phi_basis(Basis(fam.kind, fam.over.primes[0]),
                             fam.n).to_phi()
        else:
            fphi = _family_phi(fam)
        phi = fphi if phi is None else phi.max_with(fphi)
    if phi is None:
        return ZERO_TYPE
    return CdType.from_phi(phi)


class Decomposition:
    """The wedge decomposition of a positive type over the Kuzminov basis.

    k_q is the exponent at Q; k_zloc, k_zp, k_zpinf give per prime the
    exponent of the corresponding basis family (1 means the trivial
    one-dimensional type).
    """

    __slots__ = ("k_q", "k_zloc", "k_zp", "k_zpinf")

    def __init__(self, k_q, k_zloc, k_zp, k_zpinf):
        self.k_q = k_q
        self.k_zloc = k_zloc
        self.k_zp = k_zp
        self.k_zpinf = k_zpinf

    def __repr__(self):
        return (f"Decomposition(k_q={self.k_q!r}, k_zloc={self.k_zloc!r}, "
                f"k_zp={self.k_zp!r}, k_zpinf={self.k_zpinf!r})")

    def rewedge(self) -> CdType:
        """Wedge the described basis types back together."""
        explicit = [nat(1), phi_basis(Basis.q(), self.k_q)]
        families = []
        for kind, fn in (("Zloc", self.k_zloc), ("Zp", self.k_zp),
                         ("ZpInf", self.k_zpinf)):
            for value, over in fn.level_sets():
                if value == 1 or over.is_empty:
                    continue
                families.append(UniformFamily(kind, value, over))
        return wedge_family(explicit, families)

    def entries(self):
        """All (basis-kind, prime-set, exponent) groups with exponent > 1."""
        out = []
        if self.k_q != 1:
            out.append(("Q", None, self.k_q))
        for kind, fn in (("Zloc", self.k_zloc), ("Zp", self.k_zp),
                         ("ZpInf", self.k_zpinf)):
            for value, over in fn.level_sets():
                if value == 1 or over.is_empty:
                    continue
                out.append((kind, over, value))
        return out


def decompose(f: CdType) -> Decomposition:
    """Write a positive type as a wedge of Kuzminov basis types.

    Recipe: k_Q = d(0); k_Zloc(p) = d(p) off S; k_Zp(p) = d(p) on D;
    k_Zpinf(p) = d(p) + 1 on S - D; everything else 1.
    """
    if f.zero or not f.is_positive:
        raise ValueError("decompose needs a type from the positive class")
    one = PrimeFn.constant(1)
    if f.norm() == 1:
        return Decomposition(1, one, one, one)
    d = f.d
    k_zloc = select(f.S, one, d)
    k_zp = select(f.D, d, one)
    k_zpinf = select(f.S - f.D, d.map(lambda v: v + 1), one)
    return Decomposition(d.at_zero,
                         PrimeFn(1, k_zloc.default, k_zloc.exceptions),
                         PrimeFn(1, k_zp.default, k_zp.exceptions),
                         PrimeFn(1, k_zpinf.default, k_zpinf.exceptions))
