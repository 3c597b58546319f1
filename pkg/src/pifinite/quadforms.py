"""Counting alternating 2-forms over F_p with vanishing wedge square, and the
closed-form cardinality of the fiber of the cup-square map between EM spaces
in degrees 2 and 4.

This is the one corner of the package where a nontrivial Postnikov
invariant enters; everything reduces to exact counting over F_p plus one
explicit rational formula, and the two routes cross-check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import InputError, ResourceBudgetError
from .rationals import ExactRational, binom_ext, is_prime

DEFAULT_ENUMERATION_BUDGET = 10_000_000


def _require_odd_prime(p: int) -> int:
    if p == 2:
        raise InputError("p = 2 is unsupported here (the construction needs an odd prime)")
    if not is_prime(p):
        raise InputError(f"expected an odd prime, got {p!r}")
    return p


@dataclass(frozen=True)
class FormCountReport:
    """Result of counting 2-forms omega on F_p^n with omega ^ omega = 0."""
    prime: int
    dimension: int
    kernel_count: int
    total_forms: int

    def __post_init__(self):
        if not 1 <= self.kernel_count <= self.total_forms:
            raise InputError("kernel count out of range")
        # the zero form plus (p-1)-orbits of decomposables
        if self.dimension >= 4 and self.kernel_count % (self.prime - 1) != 1:
            raise InputError("kernel count must be 1 mod p-1")


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def decomposable_form_count(p: int, n: int) -> int:
    """Closed-form count of {omega : omega ^ omega = 0}: the zero form plus
    p-1 nonzero multiples of u ^ v per 2-dimensional subspace <u, v>."""
    _require_odd_prime(p)
    if n < 1:
        raise InputError(f"dimension must be >= 1, got {n}")
    return 1 + (p - 1) * gaussian_binomial(n, 2, p)


def count_null_square_two_forms(p: int, n: int,
                                budget: int = DEFAULT_ENUMERATION_BUDGET) -> FormCountReport:
    """Brute-force count of alternating 2-forms with zero wedge square.

    Forms are strictly-upper-triangular coefficient vectors; the wedge square
    vanishes iff every Pluecker-style coordinate
    w_ab*w_cd - w_ac*w_bd + w_ad*w_bc (a<b<c<d) vanishes mod p (odd p makes
    the overall factor 2 invertible).  Enumeration is chunked and exact.
    """
    _require_odd_prime(p)
    if n < 1:
        raise InputError(f"dimension must be >= 1, got {n}")
    m = math.comb(n, 2)
    total = p ** m
    if total > budget:
        raise ResourceBudgetError(
            f"{total} forms exceed the enumeration budget {budget}")
    if n < 4:
        # no 4-subsets, the wedge square lives in Lambda^4 = 0
        return FormCountReport(p, n, total, total)

    pos = {pair: i for i, pair in enumerate(combinations(range(n), 2))}
    quads = [(pos[(a, b)], pos[(c, d)], pos[(a, c)], pos[(b, d)], pos[(a, d)], pos[(b, c)])
             for a, b, c, d in combinations(range(n), 4)]
    powers = p ** np.arange(m, dtype=np.int64)

    kernel = 0
    chunk = 1 << 18
    for start in range(0, total, chunk):
        ids = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (ids[:, None] // powers[None, :]) % p
        alive = np.ones(len(ids), dtype=bool)
        for ab, cd, ac, bd, ad, bc in quads:
            coord = (digits[:, ab] * digits[:, cd]
                     - digits[:, ac] * digits[:, bd]
                     + digits[:, ad] * digits[:, bc]) % p
            alive &= coord == 0
        kernel += int(alive.sum())
    return FormCountReport(p, n, kernel, total)


def cup_square_fiber_cardinality(p: int, n: int) -> ExactRational:
    """Height-n cardinality of the fiber of the cup-square map from the
    degree-2 to the degree-4 EM space of C_p (odd p):

        p^C(n-1, 3) * (p^(3-n) + p^n - p - 1) / (p^2 - 1).
    """
    _require_odd_prime(p)
    if n < 0:
        raise InputError(f"height must be >= 0, got {n}")
    lead = Fraction(p) ** binom_ext(n - 1, 3)
    return lead * (Fraction(p) ** (3 - n) + p ** n - p - 1) / (p ** 2 - 1)


@dataclass(frozen=True)
class MultiplicativityReport:
    """Fiber-times-base against total-space cardinality at height 4."""
    prime: int
    lhs: ExactRational   # |fiber| * |base|
    rhs: ExactRational   # |total space|
    multiplicative: bool


def amenability_failure_report(p: int) -> MultiplicativityReport:
    """The height-4 counterexample to multiplicativity for a non-principal
    fibration: fiber times base gives p^3 + p - 1, the total space gives p^3."""
    _require_odd_prime(p)
    base_card = Fraction(p) ** binom_ext(3, 4)   # degree-4 EM space at height 4: exponent 0
    lhs = cup_square_fiber_cardinality(p, 4) * base_card
    rhs = Fraction(p) ** binom_ext(3, 2)         # degree-2 EM space at height 4
    return MultiplicativityReport(p, lhs, rhs, lhs == rhs)
