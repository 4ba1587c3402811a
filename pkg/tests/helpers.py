"""Small braces and brute-force oracles shared by the tests."""

import itertools

import numpy as np

from simplebraces.asymmetric import ActionMap, Cocycle, asymmetric_product
from simplebraces.brace import FiniteBrace, trivial_abelian, trivial_cyclic


def dihedral_brace() -> FiniteBrace:
    """Z/3 ⋊ Z/2 with the inversion action: additive group Z/6, multiplicative group S_3."""
    T, S = trivial_cyclic(3), trivial_cyclic(2)
    alpha = ActionMap(T, S, lambda s, t: np.where(s % 2 == 1, (-t) % 3, t))
    return asymmetric_product(T, S, Cocycle.zero(T, S), alpha, name="Z/3 x| Z/2")


def twisted_brace() -> FiniteBrace:
    """Z/2 ⋊ Z/2 with ``b(x, y) = xy``: additive group Z/4, trivial action."""
    T, S = trivial_cyclic(2), trivial_cyclic(2)
    return asymmetric_product(T, S, Cocycle(T, S, lambda x, y: x * y), ActionMap.trivial(T, S))


def brute_ideals(B: FiniteBrace) -> list[frozenset]:
    """Every ideal, found by testing every subset containing 0 against the definition."""
    n = B.size
    add = [[int(B.add(a, b)) for b in range(n)] for a in range(n)]
    mul = [[int(B.mul(a, b)) for b in range(n)] for a in range(n)]
    neg = [int(B.neg(a)) for a in range(n)]
    inv = [int(B.inv(a)) for a in range(n)]
    ideals = []
    for r in range(n):
        for rest in itertools.combinations(range(1, n), r):
            I = frozenset((0,) + rest)
            if any(add[a][b] not in I for a in I for b in I):
                continue
            if any(mul[mul[a][x]][inv[a]] not in I for a in range(n) for x in I):
                continue
            if any(add[mul[a][x]][neg[a]] not in I for a in range(n) for x in I):
                continue
            ideals.append(I)
    return ideals


def brute_closure(ideals: list[frozenset], generators) -> frozenset:
    gens = set(int(g) for g in generators)
    return frozenset.intersection(*[I for I in ideals if gens <= I])


SMALL = {
    "Z/4": lambda: trivial_cyclic(4),
    "Z/2xZ/4": lambda: trivial_abelian([2, 4]),
    "Z/3 x| Z/2": dihedral_brace,
    "b=xy on Z/2": twisted_brace,
}
