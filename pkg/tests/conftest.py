"""Shared helpers: small group zoo, random expression generator, and
brute-force oracles that stay independent of the library's own recursions."""

from __future__ import annotations

import functools
import itertools
import random

import pifinite as pf

GROUP_TEXTS = ("C2", "C3", "C4", "C6", "S3", "D8", "C2 x C2")
ABELIAN_POOL = ((2,), (3,), (4,), (2, 2), (6,), (2, 4))


@functools.lru_cache(maxsize=None)
def named_group(text: str) -> pf.FiniteGroup:
    return pf.build_group(pf.parse_group(text))


def builtin_groups() -> list[pf.FiniteGroup]:
    return [named_group(t) for t in GROUP_TEXTS]


def random_space_expr(rng: random.Random, depth: int = 2) -> pf.SpaceExpr:
    """Random expression over a small atom pool; sizes stay loop-friendly."""
    roll = rng.random()
    if depth == 0 or roll < 0.55:
        kind = rng.randrange(3)
        if kind == 0:
            return pf.finite_set(rng.randint(1, 3))
        if kind == 1:
            return pf.classifying(named_group(rng.choice(GROUP_TEXTS)))
        return pf.em_space(rng.choice(ABELIAN_POOL), rng.randint(1, 3))
    if roll < 0.8:
        return pf.disjoint_union(*(random_space_expr(rng, depth - 1)
                                   for _ in range(rng.randint(2, 3))))
    return pf.product(random_space_expr(rng, depth - 1),
                      random_space_expr(rng, depth - 1))


def random_space_text(rng: random.Random, depth: int = 2) -> str:
    return pf.space_text(random_space_expr(rng, depth))


# -- oracles -------------------------------------------------------------------------

def oracle_commuting_tuples(g: pf.FiniteGroup, p: int, n: int) -> int:
    """Direct tuple enumeration: no classes, no centralizers, no recursion."""
    pelts = [x for x in g.elements() if g.is_p_element(x, p)]
    count = 0
    for tup in itertools.product(pelts, repeat=n):
        if all(g.mul(a, b) == g.mul(b, a)
               for a, b in itertools.combinations(tup, 2)):
            count += 1
    return count


def oracle_conjugacy_classes(g: pf.FiniteGroup) -> list[frozenset[int]]:
    """Orbit computation from scratch."""
    classes = []
    seen: set[int] = set()
    for x in g.elements():
        if x in seen:
            continue
        orbit = frozenset(g.mul(g.mul(a, x), g.inv(a)) for a in g.elements())
        seen |= orbit
        classes.append(orbit)
    return classes
