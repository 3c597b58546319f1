"""Semi-delta-ring arithmetic on height profiles.

A height profile records, for one formal element, its exact rational image
at each chromatic layer n = 0, 1, 2, ...  On p-integral values the layers
carry the p-derivation delta(a) = (a - a^p)/p, and the p-adic valuation of
a layer decides how the element acts there: a unit acts invertibly
(DIVISIBLE), positive valuation forces completeness (COMPLETE), and an
exact zero is its own class (ZERO).

The splitting elements built here are integer combinations of classifying
space symbols [BG]: beta_element(p, k) is a unit at every layer above k and
dies at layer k, and alpha_splitter multiplies the first k+1 of them into a
profile that separates layers <= k from layers > k.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .errors import InputError, ResourceBudgetError
from .groups import Cyclic, FiniteGroup, build_group, count_commuting_p_tuples, \
    direct_product, wreath_cyclic
from .rationals import ExactRational, RationalLike, binom_ext, require_prime, vp
from .spaces import SpaceExpr, classifying, height_cardinality

DEFAULT_ITER_DIGITS = 10_000
DEFAULT_BETA_MAX_K = 4


class LayerClass(Enum):
    DIVISIBLE = "divisible"
    COMPLETE = "complete"
    ZERO = "zero"


# -- the p-derivation ---------------------------------------------------------------

def _delta_raw(a: Fraction, p: int) -> Fraction:
    return (a - a ** p) / p


def delta(a: RationalLike, p: int) -> ExactRational:
    """The additive p-derivation (a - a^p)/p on p-integral rationals.

    Fermat's little theorem keeps integers integral; more generally any
    rational with vp(a) >= 0 maps to another such.  Negative valuation is
    rejected: there the formula leaves the p-integral subring.
    """
    require_prime(p)
    a = Fraction(a)
    if a != 0 and vp(a, p) < 0:
        raise InputError(f"delta needs vp(a) >= 0, got vp={vp(a, p)} for a={a}")
    return _delta_raw(a, p)


def _check_digits(a: Fraction, max_digits: int) -> None:
    bits = max_digits * 4  # ~1.2 bits of slack per decimal digit
    if a.numerator.bit_length() > bits or a.denominator.bit_length() > bits:
        raise ResourceBudgetError(
            f"delta iterate exceeds the {max_digits}-digit budget")


def delta_iter(a: RationalLike, p: int, k: int, *,
               max_digits: int = DEFAULT_ITER_DIGITS) -> ExactRational:
    """k-fold iterate of delta; k = 0 is the identity."""
    if k < 0:
        raise InputError(f"iteration count must be >= 0, got {k}")
    out = Fraction(a)
    for _ in range(k):
        out = delta(out, p)
        _check_digits(out, max_digits)
    return out


def _delta_iter_raw(a: Fraction, p: int, k: int, *,
                    max_digits: int = DEFAULT_ITER_DIGITS) -> Fraction:
    # Unguarded variant for layer 0, where values need not be p-integral.
    # On single group symbols it agrees with the formal expansion:
    # delta(1/|G|) = 1/(p|G|) - 1/(p|G|^p) exactly.
    out = Fraction(a)
    for _ in range(k):
        out = _delta_raw(out, p)
        _check_digits(out, max_digits)
    return out


# -- height profiles -----------------------------------------------------------------

@dataclass(frozen=True)
class HeightProfile:
    """Exact layer values a_0, ..., a_N of one element at a fixed prime."""
    prime: int
    values: tuple[ExactRational, ...]

    def __post_init__(self):
        require_prime(self.prime)
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @property
    def top(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> ExactRational:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def pointwise_mul(self, other: "HeightProfile") -> "HeightProfile":
        if self.prime != other.prime or len(self) != len(other):
            raise InputError("profiles must share prime and range")
        return HeightProfile(self.prime,
                             tuple(a * b for a, b in zip(self.values, other.values)))


def height_profile(x: SpaceExpr, p: int, top: int, *,
                   em_fast_path: bool = True) -> HeightProfile:
    """Profile of a space: layer n holds its height-n cardinality."""
    if top < 0:
        raise InputError(f"profile range must be >= 0, got {top}")
    return HeightProfile(p, tuple(height_cardinality(x, p, n, em_fast_path=em_fast_path)
                                  for n in range(top + 1)))


def classify_layer(profile: HeightProfile, n: int) -> LayerClass:
    """How the element acts on layer n.

    Layers n >= 1 classify by valuation (unit: DIVISIBLE, positive: COMPLETE,
    exact zero: ZERO).  Layer 0 is rational, where only vanishing matters:
    zero acts as zero, anything else invertibly.
    """
    if not 0 <= n < len(profile):
        raise InputError(f"layer {n} outside profile range 0..{profile.top}")
    a = profile[n]
    if a == 0:
        return LayerClass.ZERO
    if n == 0:
        return LayerClass.DIVISIBLE
    v = vp(a, profile.prime)
    if v == 0:
        return LayerClass.DIVISIBLE
    if v > 0:
        return LayerClass.COMPLETE
    raise InputError(f"layer {n} value {a} is not p-integral")


# -- formal combinations of classifying-space symbols ----------------------------------

def _term_sort_key(item):
    (group, dpow), _ = item
    return (dpow, group.order, group.table.tobytes())


@dataclass(frozen=True)
class R1Element:
    """Integer combination of symbols delta^j [BG] plus an integer constant.

    The plain symbols [BG] span a semiring: [BG][BH] = [B(G x H)], so
    products of delta-free elements expand formally.  Evaluation sends the
    symbol [BG] at layer n to the height-n cardinality of BG and applies
    delta numerically, which is exactly what the formal delta does to the
    layer values.
    """
    terms: tuple[tuple[tuple[FiniteGroup, int], int], ...]  # ((group, delta_power), coeff)
    constant: int = 0

    def __post_init__(self):
        merged: dict[tuple[FiniteGroup, int], int] = {}
        for (group, dpow), coeff in self.terms:
            if dpow < 0:
                raise InputError("delta power must be >= 0")
            key = (group, dpow)
            merged[key] = merged.get(key, 0) + coeff
        canon = tuple(sorted(((k, c) for k, c in merged.items() if c),
                             key=_term_sort_key))
        object.__setattr__(self, "terms", canon)

    # construction helpers

    @classmethod
    def group_symbol(cls, group: FiniteGroup) -> "R1Element":
        return cls((((group, 0), 1),))

    @classmethod
    def integer(cls, m: int) -> "R1Element":
        return cls((), m)

    # ring structure

    def __add__(self, other: Union["R1Element", int]) -> "R1Element":
        other = _coerce(other)
        return R1Element(self.terms + other.terms, self.constant + other.constant)

    def __radd__(self, other: int) -> "R1Element":
        return self + other

    def __neg__(self) -> "R1Element":
        return R1Element(tuple((k, -c) for k, c in self.terms), -self.constant)

    def __sub__(self, other: Union["R1Element", int]) -> "R1Element":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "R1Element":
        return _coerce(other) - self

    def __mul__(self, other: Union["R1Element", int]) -> "R1Element":
        if isinstance(other, int):
            return R1Element(tuple((k, c * other) for k, c in self.terms),
                             self.constant * other)
        if any(dpow for (_, dpow), _ in self.terms + other.terms):
            raise InputError("products of delta-applied symbols do not expand formally")
        terms: list[tuple[tuple[FiniteGroup, int], int]] = []
        for (g, _), c in self.terms:
            for (h, _), d in other.terms:
                terms.append(((direct_product(g, h), 0), c * d))
            terms.append(((g, 0), c * other.constant))
        for (h, _), d in other.terms:
            terms.append(((h, 0), d * self.constant))
        return R1Element(tuple(terms), self.constant * other.constant)

    def __rmul__(self, other: int) -> "R1Element":
        return self * other

    # evaluation

    def value_at(self, p: int, n: int) -> ExactRational:
        """Image of this element on the height-n layer at the prime p."""
        require_prime(p)
        if n < 0:
            raise InputError(f"layer must be >= 0, got {n}")
        total = Fraction(self.constant)
        for (group, dpow), coeff in self.terms:
            if n == 0:
                base = Fraction(1, group.order)
                total += coeff * _delta_iter_raw(base, p, dpow)
            else:
                base = height_cardinality(classifying(group), p, n)
                total += coeff * delta_iter(base, p, dpow)
        return total

    def profile(self, p: int, top: int) -> HeightProfile:
        if top < 0:
            raise InputError(f"profile range must be >= 0, got {top}")
        return HeightProfile(p, tuple(self.value_at(p, n) for n in range(top + 1)))

    def __repr__(self) -> str:
        bits = []
        for (group, dpow), coeff in self.terms:
            sym = f"[B{group.name}]"
            if dpow:
                sym = f"d^{dpow}{sym}" if dpow > 1 else f"d{sym}"
            bits.append(f"{coeff}*{sym}" if coeff != 1 else sym)
        if self.constant or not bits:
            bits.append(str(self.constant))
        return "R1Element(" + " + ".join(bits) + ")"


def _coerce(x: Union[R1Element, int]) -> R1Element:
    return R1Element.integer(x) if isinstance(x, int) else x


# -- splitting elements ------------------------------------------------------------------

def beta_element(p: int, k: int, *, max_k: int = DEFAULT_BETA_MAX_K) -> R1Element:
    """The layer-k splitting element.

    k = 0 is the formal p[BC_p] - 1, which vanishes on the rational layer
    and is the unit p^n - 1 at every layer n >= 1.  For k >= 1 the element
    is delta^(k-1)[BC_p] - b with b the representative of the layer-k value
    mod p in 1..p-1: the layer-n value of delta^(k-1)[BC_p] is the (k-1)-fold
    delta iterate of p^(n-1), whose valuation is n - k for n >= k, so the
    difference has positive valuation exactly at layer k and is a unit at
    every layer above.
    """
    require_prime(p)
    if k < 0:
        raise InputError(f"k must be >= 0, got {k}")
    if k > max_k:
        raise ResourceBudgetError(f"k={k} exceeds the iterate budget {max_k}")
    c_p = build_group(Cyclic(p))
    if k == 0:
        return p * R1Element.group_symbol(c_p) - 1
    gamma_k = delta_iter(p ** (k - 1), p, k - 1)
    b = int(gamma_k) % p
    assert b != 0, "the layer-k value is a p-adic unit"
    return R1Element((((c_p, k - 1), 1),), -b)


def alpha_splitter(p: int, k: int, top: int, *,
                   max_k: int = DEFAULT_BETA_MAX_K) -> HeightProfile:
    """Pointwise product of the beta profiles for 0..k: COMPLETE or ZERO on
    every layer <= k and DIVISIBLE on every layer in (k, top]."""
    if k > top:
        raise InputError(f"need k <= top, got k={k}, top={top}")
    profile = beta_element(p, 0, max_k=max_k).profile(p, top)
    for j in range(1, k + 1):
        profile = profile.pointwise_mul(beta_element(p, j, max_k=max_k).profile(p, top))
    return profile


# -- consistency reports ----------------------------------------------------------------

@dataclass(frozen=True)
class WreathReport:
    """Both sides of the wreath-product identity for delta at one layer."""
    group: str
    prime: int
    layer: int
    lhs: ExactRational          # delta of the classifying-space value
    rhs: ExactRational          # wreath-product value minus direct-product value
    sign: Optional[int]         # +1 / -1 when one relates them, None if both vanish
    magnitudes_match: bool


def verify_wreath_identity(group: FiniteGroup, p: int, n: int) -> WreathReport:
    """Compare delta(|BG|_n) against |B(G wr C_p)|_n - |B(C_p x G)|_n.

    The left side applies the p-derivation formula to the layer value; the
    right side is computed independently from commuting-tuple counts in the
    wreath and direct product groups.
    """
    require_prime(p)
    if n < 0:
        raise InputError(f"layer must be >= 0, got {n}")

    def bg_value(h: FiniteGroup) -> Fraction:
        if n == 0:
            return Fraction(1, h.order)
        return Fraction(count_commuting_p_tuples(h, p, n), h.order)

    base = bg_value(group)
    lhs = _delta_raw(base, p) if n == 0 else delta(base, p)
    wreath = wreath_cyclic(group, p)
    direct = direct_product(build_group(Cyclic(p)), group)
    rhs = bg_value(wreath) - bg_value(direct)

    if lhs == rhs == 0:
        sign, match = None, True
    elif lhs == rhs:
        sign, match = 1, True
    elif lhs == -rhs:
        sign, match = -1, True
    else:
        sign, match = None, False
    return WreathReport(group.name, p, n, lhs, rhs, sign, match)


def pk_relation_check(p: int, n: int, kmax: int) -> bool:
    """At the height-n layer the EM-space values p_(k) = p^C(n-1, k) satisfy
    p_(k) = p_(n)^((-1)^(k-n)) for all k >= n; only n = 0 alternates."""
    require_prime(p)
    if n < 0 or kmax < n:
        raise InputError(f"need 0 <= n <= kmax, got n={n}, kmax={kmax}")

    def pk(k: int) -> Fraction:
        return Fraction(p) ** binom_ext(n - 1, k)

    base = pk(n)
    return all(pk(k) == base ** ((-1) ** (k - n)) for k in range(n, kmax + 1))
