"""Group-theoretic facts about a finite brace: element orders, Sylow subgroups,
abelian invariants, derived series, and the two-prime order constraint."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .brace import (
    FiniteBrace,
    additive_generators,
    is_additive_subgroup,
    is_mult_subgroup,
    mult_generators_of,
    mult_span,
)
from .residue import factorize, is_prime

DERIVED_DEPTH_CAP = 10


class UnsupportedInput(ValueError):
    pass


def _orders(B: FiniteBrace, op, elements: np.ndarray | None = None) -> np.ndarray:
    x = B.elements() if elements is None else np.asarray(elements, dtype=np.int64)
    order = np.ones(x.shape, dtype=np.int64)
    acc = x.copy()
    active = acc != 0
    k = 1
    while active.any():
        k += 1
        idx = np.flatnonzero(active)
        acc[idx] = op(acc[idx], x[idx])
        done = idx[acc[idx] == 0]
        order[done] = k
        active[done] = False
        if k > B.size:
            raise RuntimeError("element order exceeds group size")
    return order


def additive_orders(B: FiniteBrace, elements=None) -> np.ndarray:
    return _orders(B, B.add, elements)


def multiplicative_orders(B: FiniteBrace, elements=None) -> np.ndarray:
    return _orders(B, B.mul, elements)


def _p_power(k: np.ndarray, p: int) -> np.ndarray:
    k = k.copy()
    while True:
        divisible = (k % p == 0) & (k > 1)
        if not divisible.any():
            return k == 1
        k[divisible] //= p


def additive_sylow(B: FiniteBrace, p: int) -> np.ndarray:
    """Mask of elements of ``p``-power additive order, checked to be a subgroup of full ``p``-part size."""
    if not is_prime(p) or B.size % p:
        raise ValueError(f"{p} is not a prime divisor of {B.size}")
    mask = _p_power(additive_orders(B), p)
    expected = p ** factorize(B.size)[p]
    if mask.sum() != expected or not is_additive_subgroup(B, mask):
        raise AssertionError(f"additive Sylow {p}-subgroup has {int(mask.sum())} elements, expected {expected}")
    return mask


def abelian_invariants(orders: Sequence[int]) -> dict[int, list[int]]:
    """Abelian invariants of a finite abelian group from the orders of all its elements.

    Returns ``{p: [e_1 >= e_2 >= ...]}`` meaning ``⊕ Z/(p^e_j)``.  Uses
    ``#{x : p^k x = 0} = p^(sum_j min(e_j, k))``.
    """
    orders = np.asarray(orders, dtype=np.int64)
    out: dict[int, list[int]] = {}
    for p in factorize(len(orders)):
        p_orders = orders[_p_power(orders, p)]
        counts = []
        k = 0
        while True:
            c = int(np.sum(p_orders <= p**k) if k == 0 else np.sum((p**k) % p_orders == 0))
            counts.append(c)
            if c == len(p_orders):
                break
            k += 1
        # number of cyclic factors of exponent >= k
        ranks = []
        for k in range(1, len(counts)):
            ratio = counts[k] // counts[k - 1]
            r = round(np.log(ratio) / np.log(p))
            if p**r != ratio or counts[k] % counts[k - 1]:
                raise AssertionError("element orders are not those of an abelian group")
            ranks.append(r)
        exps = []
        for k, r in enumerate(ranks, start=1):
            nxt = ranks[k] if k < len(ranks) else 0
            exps += [k] * (r - nxt)
        out[p] = sorted(exps, reverse=True)
    return out


def _commutator(B: FiniteBrace, x, y):
    return B.mul(B.mul(B.inv(x), B.inv(y)), B.mul(x, y))


def normal_closure(B: FiniteBrace, seeds: Sequence[int], conjugators: Sequence[int]) -> np.ndarray:
    """Smallest subgroup containing ``seeds`` and normalized by ``conjugators``."""
    gens: list[int] = []
    mask = np.zeros(B.size, dtype=bool)
    mask[0] = True
    pending = [int(s) for s in seeds]
    conj = np.asarray(conjugators, dtype=np.int64)
    while pending:
        added = False
        for x in pending:
            if not mask[x]:
                gens.append(x)
                mask = mult_span(B, gens)
                added = True
        if not added:
            break
        g = np.asarray(gens, dtype=np.int64)
        images = np.unique(np.concatenate([np.atleast_1d(B.conj(c, g)) for c in conj])) if conj.size else g
        pending = [int(v) for v in images if not mask[v]]
    return mask


def derived_series(B: FiniteBrace, cap: int = DERIVED_DEPTH_CAP) -> list[int]:
    """Orders of ``G ⊇ G' ⊇ G'' ⊇ ...`` for ``G = (B,·)``, stopping at the trivial group or a fixed point."""
    sizes = [B.size]
    gens = list(B.mult_generators)
    for _ in range(cap):
        g = np.asarray(gens, dtype=np.int64)
        if g.size == 0:
            break
        comms = np.unique(np.asarray(_commutator(B, g[:, None], g[None, :])).ravel())
        mask = normal_closure(B, [int(c) for c in comms if c != 0], gens)
        size = int(mask.sum())
        if size == sizes[-1]:
            break
        sizes.append(size)
        if size == 1:
            break
        gens = mult_generators_of(B, mask)
    return sizes


def derived_length(B: FiniteBrace, cap: int = DERIVED_DEPTH_CAP) -> int | None:
    """Derived length of ``(B,·)``; None when the series stalls above the trivial group."""
    sizes = derived_series(B, cap)
    return len(sizes) - 1 if sizes[-1] == 1 else None


def is_abelian_subgroup(B: FiniteBrace, mask: np.ndarray) -> bool:
    g = np.asarray(mult_generators_of(B, mask), dtype=np.int64)
    if g.size == 0:
        return True
    return bool(np.all(B.mul(g[:, None], g[None, :]) == B.mul(g[None, :], g[:, None])))


@dataclass
class GroupFacts:
    additive_abelian: bool
    additive_invariants: dict[int, list[int]]
    derived_series: list[int]
    derived_length: int | None
    sylow_is_subgroup: dict[int, bool] = field(default_factory=dict)
    sylow_abelian: dict[int, bool] = field(default_factory=dict)
    sylow_invariants: dict[int, list[int]] = field(default_factory=dict)

    @property
    def metabelian(self) -> bool:
        return self.derived_length is not None and self.derived_length <= 2

    @property
    def a_group(self) -> bool:
        return all(self.sylow_abelian.values())

    def as_dict(self) -> dict:
        return {
            "additive_abelian": self.additive_abelian,
            "additive_invariants": {str(p): e for p, e in self.additive_invariants.items()},
            "derived_series": self.derived_series,
            "derived_length": self.derived_length,
            "metabelian": self.metabelian,
            "sylow_abelian": {str(p): v for p, v in self.sylow_abelian.items()},
            "sylow_invariants": {str(p): e for p, e in self.sylow_invariants.items()},
            "a_group": self.a_group,
        }


def group_facts(B: FiniteBrace) -> GroupFacts:
    """Additive invariants, derived series of ``(B,·)`` and multiplicative Sylow structure.

    Each additive Sylow subgroup is a left ideal, hence a multiplicative subgroup
    of full ``p``-part order, i.e. a multiplicative Sylow subgroup; this is
    verified before it is used.
    """
    agens = np.asarray(additive_generators(B, np.ones(B.size, dtype=bool)), dtype=np.int64)
    abelian = bool(np.all(B.add(agens[:, None], agens[None, :]) == B.add(agens[None, :], agens[:, None])))
    add_orders = additive_orders(B)
    series = derived_series(B)
    facts = GroupFacts(
        additive_abelian=abelian,
        additive_invariants=abelian_invariants(add_orders),
        derived_series=series,
        derived_length=len(series) - 1 if series[-1] == 1 else None,
    )
    for p in factorize(B.size):
        mask = _p_power(add_orders, p)
        facts.sylow_is_subgroup[p] = is_mult_subgroup(B, mask)
        facts.sylow_abelian[p] = facts.sylow_is_subgroup[p] and is_abelian_subgroup(B, mask)
        if facts.sylow_abelian[p]:
            members = np.flatnonzero(mask)
            facts.sylow_invariants[p] = abelian_invariants(multiplicative_orders(B, members)).get(p, [])
    return facts


def order_constraints(factorization: Sequence[tuple[int, int]]) -> bool:
    """For ``|B| = p^n q^m``: do ``0 < t <= m`` with ``p | q^t − 1`` and ``0 < s <= n`` with ``q | p^s − 1`` exist?"""
    if len(factorization) != 2:
        raise UnsupportedInput("the constraint is stated for orders with exactly two prime divisors")
    (p, n), (q, m) = factorization
    if p == q or not (is_prime(p) and is_prime(q)) or n < 1 or m < 1:
        raise UnsupportedInput(f"bad factorization {factorization}")
    return any((q**t - 1) % p == 0 for t in range(1, m + 1)) and any((p**s - 1) % q == 0 for s in range(1, n + 1))
