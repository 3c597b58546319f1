"""Symbolic pi-finite spaces and their exact cardinality evaluators.

The expression grammar is deliberately small: finite sets, classifying
spaces of finite groups, Eilenberg-MacLane spaces of finite abelian groups,
disjoint unions and products.  Every space it denotes has finitely many
components and finite homotopy groups, so three things are computable
exactly by structural recursion:

* the classical alternating-product cardinality (a non-negative rational,
  counting each component weighted by 1/|pi_1| * |pi_2| / ...);
* the p-adic free loop space, again as an expression of the grammar;
* the height-n cardinality at a prime p, obtained by looping n times and
  taking the classical cardinality of the result.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import InputError
from .groups import FiniteGroup, p_loop_decomposition
from .rationals import ExactRational, binom_ext, require_prime, vp


# -- expression grammar ----------------------------------------------------------

@dataclass(frozen=True)
class Empty:
    """The empty space."""


@dataclass(frozen=True)
class FinSet:
    """A finite discrete space with ``size`` points (size >= 1)."""
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise InputError(f"FinSet needs size >= 1, got {self.size} (use EMPTY for 0)")


@dataclass(frozen=True)
class Classifying:
    """The classifying space of a finite group: one component, fundamental
    group ``group``, nothing above degree 1."""
    group: FiniteGroup


@dataclass(frozen=True)
class EM:
    """A single finite abelian group in one degree k >= 1.

    ``factors`` is the cyclic decomposition; it is canonicalized to the
    sorted tuple of prime-power orders, so isomorphic coefficient groups
    yield equal atoms.
    """
    factors: tuple[int, ...]
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InputError(f"EM needs degree >= 1, got {self.degree}")
        canon = _canonical_cyclic_factors(self.factors)
        if not canon:
            raise InputError("EM needs a nontrivial coefficient group")
        object.__setattr__(self, "factors", canon)

    @property
    def group_order(self) -> int:
        return math.prod(self.factors)


@dataclass(frozen=True)
class Disjoint:
    parts: tuple["SpaceExpr", ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise InputError("Disjoint needs at least two parts (use the helper)")


@dataclass(frozen=True)
class Product:
    factors: tuple["SpaceExpr", ...]

    def __post_init__(self):
        if len(self.factors) < 2:
            raise InputError("Product needs at least two factors (use the helper)")


SpaceExpr = Union[Empty, FinSet, Classifying, EM, Disjoint, Product]

EMPTY = Empty()
PT = FinSet(1)


def _prime_power_split(m: int) -> list[int]:
    """Split m >= 1 into its prime-power parts (CRT decomposition of C_m)."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            q = 1
            while m % d == 0:
                q *= d
                m //= d
            out.append(q)
        d += 1
    if m > 1:
        out.append(m)
    return out


def _canonical_cyclic_factors(factors: Iterable[int]) -> tuple[int, ...]:
    canon: list[int] = []
    for m in factors:
        if m < 1:
            raise InputError(f"cyclic factor orders must be >= 1, got {m}")
        canon.extend(_prime_power_split(m))
    return tuple(sorted(canon))


# -- smart constructors ------------------------------------------------------------

def finite_set(k: int) -> SpaceExpr:
    if k < 0:
        raise InputError(f"finite set size must be >= 0, got {k}")
    return EMPTY if k == 0 else FinSet(k)


def classifying(group: FiniteGroup) -> SpaceExpr:
    return PT if group.order == 1 else Classifying(group)


def em_space(factors: Iterable[int], degree: int) -> SpaceExpr:
    """EM atom with normalization: degree 0 collapses to the underlying finite
    set, a trivial coefficient group collapses to a point."""
    canon = _canonical_cyclic_factors(factors)
    if degree < 0:
        raise InputError(f"EM degree must be >= 0, got {degree}")
    if not canon:
        return PT
    if degree == 0:
        return FinSet(math.prod(canon))
    return EM(canon, degree)


def disjoint_union(*parts: SpaceExpr) -> SpaceExpr:
    flat: list[SpaceExpr] = []
    for part in parts:
        if isinstance(part, Disjoint):
            flat.extend(part.parts)
        elif not isinstance(part, Empty):
            flat.append(part)
    if not flat:
        return EMPTY
    if len(flat) == 1:
        return flat[0]
    return Disjoint(tuple(flat))


def product(*factors: SpaceExpr) -> SpaceExpr:
    flat: list[SpaceExpr] = []
    for f in factors:
        if isinstance(f, Empty):
            return EMPTY
        if isinstance(f, Product):
            flat.extend(f.factors)
        elif f != PT:
            flat.append(f)
    if not flat:
        return PT
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


# -- normal form -------------------------------------------------------------------

def _abelian_primary_factors(g: FiniteGroup) -> tuple[int, ...]:
    """Invariant prime-power cyclic factors of an abelian group, recovered
    from its element-order statistics."""
    factors: list[int] = []
    for q in _prime_divisors(g.order):
        # e_j = log_q #{x : order(x) divides q^j}; the successive differences
        # m_j = e_j - e_{j-1} form the conjugate of the type partition.
        exps = [0]
        while exps[-1] < _q_exponent(g.order, q):
            qj = q ** len(exps)
            c = sum(1 for o in g.element_orders if qj % o == 0)
            e = _q_exponent(c, q)
            assert q ** e == c, "element-order counts of an abelian group are q-powers"
            exps.append(e)
        m = [exps[i] - exps[i - 1] for i in range(1, len(exps))]
        for i in range(1, (m[0] if m else 0) + 1):
            lam = sum(1 for mj in m if mj >= i)
            factors.append(q ** lam)
    return tuple(sorted(factors))


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _q_exponent(n: int, q: int) -> int:
    e = 0
    while n % q == 0:
        n //= q
        e += 1
    return e


Atom = Union[Classifying, EM]


def _atom_key(atom: Atom):
    if isinstance(atom, EM):
        return ("em", atom.degree, atom.factors, b"")
    return ("cls", atom.group.order, (), atom.group.table.tobytes())


def _canonical_atom(atom: Atom) -> Optional[Atom]:
    """Unit atoms drop out; abelian classifying spaces unify with their
    degree-1 Eilenberg-MacLane form."""
    if isinstance(atom, Classifying):
        g = atom.group
        if g.order == 1:
            return None
        if g.is_abelian():
            return EM(_abelian_primary_factors(g), 1)
    return atom


class NormalForm:
    """Multiset of components, each a sorted multiset of connected atoms.

    Finite-set factors are absorbed into component multiplicities, disjoint
    unions and products are flattened and distributed, so this is the free
    commutative semiring on the connected atoms: two expressions with equal
    normal form get equal values under every cardinality evaluator.
    """

    __slots__ = ("_counts",)

    def __init__(self, counts: Optional[dict[tuple[Atom, ...], int]] = None):
        self._counts = {c: m for c, m in (counts or {}).items() if m}

    @classmethod
    def zero(cls) -> "NormalForm":
        return cls()

    @classmethod
    def one(cls) -> "NormalForm":
        return cls({(): 1})

    @classmethod
    def scalar(cls, k: int) -> "NormalForm":
        return cls({(): k} if k else {})

    @classmethod
    def atom(cls, atom: Atom) -> "NormalForm":
        canon = _canonical_atom(atom)
        return cls.one() if canon is None else cls({(canon,): 1})

    @property
    def components(self) -> tuple[tuple[tuple[Atom, ...], int], ...]:
        return tuple(sorted(self._counts.items(),
                            key=lambda item: tuple(_atom_key(a) for a in item[0])))

    def __add__(self, other: "NormalForm") -> "NormalForm":
        counts = dict(self._counts)
        for comp, mult in other._counts.items():
            counts[comp] = counts.get(comp, 0) + mult
        return NormalForm(counts)

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        counts: dict[tuple[Atom, ...], int] = {}
        for c1, m1 in self._counts.items():
            for c2, m2 in other._counts.items():
                comp = tuple(sorted(c1 + c2, key=_atom_key))
                counts[comp] = counts.get(comp, 0) + m1 * m2
        return NormalForm(counts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NormalForm) and self._counts == other._counts

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        if not self._counts:
            return "NormalForm(0)"
        bits = []
        for comp, mult in self.components:
            atoms = " * ".join(_describe_atom(a) for a in comp) or "pt"
            bits.append(f"{mult} x [{atoms}]" if mult > 1 else f"[{atoms}]")
        return "NormalForm(" + " + ".join(bits) + ")"

    def to_expr(self) -> SpaceExpr:
        parts = []
        for comp, mult in self.components:
            factors: list[SpaceExpr] = [finite_set(mult)] if mult > 1 else []
            factors.extend(comp)
            parts.append(product(*factors) if factors else PT)
        return disjoint_union(*parts)


def _describe_atom(atom: Atom) -> str:
    if isinstance(atom, EM):
        inside = " x ".join(f"C{q}" for q in atom.factors)
        return f"B^{atom.degree}({inside})"
    return f"B({atom.group.name})"


def normal_form(x: SpaceExpr) -> NormalForm:
    """Distribute products over disjoint unions and canonicalize atoms."""
    if isinstance(x, Empty):
        return NormalForm.zero()
    if isinstance(x, FinSet):
        return NormalForm.scalar(x.size)
    if isinstance(x, (Classifying, EM)):
        return NormalForm.atom(x)
    if isinstance(x, Disjoint):
        out = NormalForm.zero()
        for part in x.parts:
            out = out + normal_form(part)
        return out
    if isinstance(x, Product):
        out = NormalForm.one()
        for f in x.factors:
            out = out * normal_form(f)
        return out
    raise InputError(f"not a space expression: {x!r}")


# -- cardinality evaluators -----------------------------------------------------------

def homotopy_cardinality(x: SpaceExpr) -> ExactRational:
    """The alternating-product count: components weighted by
    prod_k |pi_k|^((-1)^k).  Always a non-negative rational."""
    if isinstance(x, Empty):
        return Fraction(0)
    if isinstance(x, FinSet):
        return Fraction(x.size)
    if isinstance(x, Classifying):
        return Fraction(1, x.group.order)
    if isinstance(x, EM):
        n = x.group_order
        return Fraction(n) if x.degree % 2 == 0 else Fraction(1, n)
    if isinstance(x, Disjoint):
        return sum((homotopy_cardinality(p) for p in x.parts), Fraction(0))
    if isinstance(x, Product):
        return math.prod((homotopy_cardinality(f) for f in x.factors), start=Fraction(1))
    raise InputError(f"not a space expression: {x!r}")


def _p_part(factors: tuple[int, ...], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    pp = tuple(q for q in factors if q % p == 0)
    rest = tuple(q for q in factors if q % p != 0)
    return pp, rest


def p_adic_loop(x: SpaceExpr, p: int) -> SpaceExpr:
    """The space of maps from the p-completed circle.

    Finite sets are fixed; the operator passes through disjoint unions and
    products; a classifying space splits into classifying spaces of
    centralizers, one per conjugacy class of p-power-order elements; an EM
    atom picks up its p-primary part one degree down (loops based anywhere
    are a torsor over based loops, and based loops only see p-torsion).
    """
    require_prime(p)
    if isinstance(x, (Empty, FinSet)):
        return x
    if isinstance(x, Disjoint):
        return disjoint_union(*(p_adic_loop(part, p) for part in x.parts))
    if isinstance(x, Product):
        return product(*(p_adic_loop(f, p) for f in x.factors))
    if isinstance(x, Classifying):
        return disjoint_union(*(classifying(c)
                                for _, c in p_loop_decomposition(x.group, p)))
    if isinstance(x, EM):
        pp, _ = _p_part(x.factors, p)
        return product(x, em_space(pp, x.degree - 1))
    raise InputError(f"not a space expression: {x!r}")


@functools.lru_cache(maxsize=65536)
def _height_cardinality(x: SpaceExpr, p: int, n: int, fast: bool) -> Fraction:
    if n == 0:
        return homotopy_cardinality(x)
    if isinstance(x, (Empty, FinSet)):
        return homotopy_cardinality(x)
    if isinstance(x, Disjoint):
        return sum((_height_cardinality(part, p, n, fast) for part in x.parts),
                   Fraction(0))
    if isinstance(x, Product):
        return math.prod((_height_cardinality(f, p, n, fast) for f in x.factors),
                         start=Fraction(1))
    if fast and isinstance(x, EM):
        pp, rest = _p_part(x.factors, p)
        ppart = Fraction(math.prod(pp)) ** binom_ext(n - 1, x.degree)
        sign = 1 if x.degree % 2 == 0 else -1
        return ppart * Fraction(math.prod(rest)) ** sign
    return _height_cardinality(p_adic_loop(x, p), p, n - 1, fast)


def height_cardinality(x: SpaceExpr, p: int, n: int, *, em_fast_path: bool = True) -> ExactRational:
    """Cardinality at chromatic height n: loop p-adically n times, then count.

    Height 0 is the plain homotopy cardinality.  ``em_fast_path`` turns on a
    closed form on EM atoms (p-part to the power C(n-1, k), the prime-to-p
    part contributing its alternating count); it agrees with the loop
    recursion everywhere and merely skips the intermediate expressions.
    """
    require_prime(p)
    if n < 0:
        raise InputError(f"height must be >= 0, got {n}")
    return _height_cardinality(x, p, n, em_fast_path)


# -- finiteness structure ------------------------------------------------------------

def is_empty_expr(x: SpaceExpr) -> bool:
    if isinstance(x, Empty):
        return True
    if isinstance(x, Disjoint):
        return all(is_empty_expr(p) for p in x.parts)
    if isinstance(x, Product):
        return any(is_empty_expr(f) for f in x.factors)
    return False


def is_contractible_expr(x: SpaceExpr) -> bool:
    if isinstance(x, FinSet):
        return x.size == 1
    if isinstance(x, Classifying):
        return x.group.order == 1
    if isinstance(x, Product):
        return all(is_contractible_expr(f) for f in x.factors)
    if isinstance(x, Disjoint):
        live = [p for p in x.parts if not is_empty_expr(p)]
        return len(live) == 1 and is_contractible_expr(live[0])
    return False


def connectivity(x: SpaceExpr) -> Union[int, float]:
    """Largest c with trivial homotopy in degrees <= c.

    Contractible expressions return math.inf.  The empty space is graded -1
    here: it has a finite (empty) set of components and nothing above, and
    its cardinality is 0 at every height.
    """
    if is_empty_expr(x):
        return -1
    if is_contractible_expr(x):
        return math.inf
    if isinstance(x, FinSet):
        return -1
    if isinstance(x, Classifying):
        return 0
    if isinstance(x, EM):
        return x.degree - 1
    if isinstance(x, Product):
        return min(connectivity(f) for f in x.factors)
    if isinstance(x, Disjoint):
        live = [p for p in x.parts if not is_empty_expr(p)]
        if len(live) == 1:
            return connectivity(live[0])
        return -1
    raise InputError(f"not a space expression: {x!r}")


def is_m_finite(x: SpaceExpr, m: int) -> bool:
    """Truncation test: finitely many components with homotopy concentrated
    in degrees <= m.  m = -2 means contractible; m = -1 means a finite
    (possibly empty) set."""
    if m < -2:
        return False
    if m == -2:
        return is_contractible_expr(x)
    if is_empty_expr(x):
        return True
    if isinstance(x, FinSet):
        return True
    if isinstance(x, Classifying):
        return x.group.order == 1 or m >= 1
    if isinstance(x, EM):
        return m >= x.degree
    if isinstance(x, Disjoint):
        return all(is_m_finite(p, m) for p in x.parts)
    if isinstance(x, Product):
        return all(is_m_finite(f, m) for f in x.factors)
    raise InputError(f"not a space expression: {x!r}")


def is_amenable_at_height(x: SpaceExpr, p: int, n: int) -> bool:
    """Whether the height-n cardinality is a p-adic unit, i.e. invertible in
    the height-n layer, so that averaging over x is possible there."""
    require_prime(p)
    if n < 1:
        raise InputError(f"amenability is a height >= 1 question, got n={n}")
    if is_empty_expr(x):
        raise InputError("the empty space has no amenability")
    return vp(height_cardinality(x, p, n), p) == 0
