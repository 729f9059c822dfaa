"""Exact Bockstein calculus for cohomological dimension.

The package has two halves.  The symbolic half (primes, groups, cdtype,
dimension) computes with dimension types of compacta: Bockstein
families, the (S, D; d) triple encoding, the product/wedge/conjugation
operations, norms, and the classical dimension formulas.  The finite
half (chains, simplicial) verifies the homological input on small
models: mapping cylinders of circle coverings, Pontryagin-style stages,
Edwards-Walsh skeleta, Moore spaces and joins.  The oracle module
checks the algebraic laws over exhaustively enumerated finite
universes, and cli exposes everything as a command line tool.
"""

from .cdtype import (
    Basis,
    BocksteinFn,
    CdType,
    Decomposition,
    ZERO_TYPE,
    decompose,
    nat,
    phi_basis,
    validate,
    wedge_family,
)
from .dimension import (
    anr_admissible,
    deficiency,
    dim,
    fibration_bounds,
    fundamental_product_dim,
    is_full_valued,
    p_regular,
    p_singular,
    power_report,
    test_space,
    testing_dim,
)
from .groups import (
    BocksteinFamily,
    DirectSum,
    GroupProfile,
    Q,
    SumOverPrimes,
    Z,
    Zinv,
    Zloc,
    Zmod,
    ZpInf,
    normalize,
    sigma,
)
from .oracle import Universe, check_laws, enumerate_types, render_reports
from .primes import (
    ALL_PRIMES,
    EMPTY,
    INF,
    NEG_INF,
    PrimeFn,
    PrimeSet,
    UndefinedArithmetic,
    check_prime,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_PRIMES",
    "Basis",
    "BocksteinFamily",
    "BocksteinFn",
    "CdType",
    "Decomposition",
    "DirectSum",
    "EMPTY",
    "GroupProfile",
    "INF",
    "NEG_INF",
    "PrimeFn",
    "PrimeSet",
    "Q",
    "SumOverPrimes",
    "UndefinedArithmetic",
    "Universe",
    "Z",
    "ZERO_TYPE",
    "Zinv",
    "Zloc",
    "Zmod",
    "ZpInf",
    "anr_admissible",
    "check_laws",
    "check_prime",
    "decompose",
    "deficiency",
    "dim",
    "enumerate_types",
    "fibration_bounds",
    "fundamental_product_dim",
    "is_full_valued",
    "nat",
    "normalize",
    "p_regular",
    "p_singular",
    "phi_basis",
    "power_report",
    "render_reports",
    "sigma",
    "test_space",
    "testing_dim",
    "validate",
    "wedge_family",
]
