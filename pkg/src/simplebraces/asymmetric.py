"""Symmetric 2-cocycles, the asymmetric product of two braces, and the twisted groups G_b(A, B).

Elements of a product ``T × S`` are indexed ``t·|S| + s`` (T-coordinate major).
Finite abelian groups are passed as trivial braces, whose one operation is
exposed both as ``add`` and ``mul``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .brace import (
    DEFAULT_SEED,
    DEFAULT_TRIPLES,
    FAIL,
    NO_COUNTEREXAMPLE,
    PASS,
    CheckReport,
    FiniteBrace,
    _rng,
    combine,
)

COCYCLE_EXHAUSTIVE_LIMIT = 1_000
GROUP_EXHAUSTIVE_LIMIT = 10_000
COMPAT_EXHAUSTIVE_TUPLES = 50_000_000
ASSOC_EXHAUSTIVE_TUPLES = 500**3

Bilinear = Callable[[np.ndarray, np.ndarray], np.ndarray]


class PreconditionError(ValueError):
    pass


@dataclass
class Cocycle:
    """``b: T × T → S`` evaluated on index arrays."""

    T: FiniteBrace
    S: FiniteBrace
    func: Bilinear
    claimed_symmetric: bool = True
    claimed_bi_additive: bool = False

    def __post_init__(self):
        if int(self(0, 0)) != 0:
            raise PreconditionError("cocycle is not normalized: b(0,0) != 0")

    def __call__(self, t1, t2):
        return np.asarray(self.func(np.asarray(t1, dtype=np.int64), np.asarray(t2, dtype=np.int64)), dtype=np.int64)

    @classmethod
    def zero(cls, T: FiniteBrace, S: FiniteBrace) -> Cocycle:
        return cls(T, S, lambda a, b: np.zeros(np.broadcast(a, b).shape, dtype=np.int64), True, True)


@dataclass
class ActionMap:
    """``α: (S,·) → Aut(T,+,·)`` as ``(s, t) ↦ α_s(t)`` on index arrays."""

    T: FiniteBrace
    S: FiniteBrace
    func: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def __post_init__(self):
        t = np.arange(min(self.T.size, 1 << 16), dtype=np.int64)
        if not np.array_equal(self(0, t), t):
            raise PreconditionError("α(0) is not the identity")

    def __call__(self, s, t):
        return np.asarray(self.func(np.asarray(s, dtype=np.int64), np.asarray(t, dtype=np.int64)), dtype=np.int64)

    @classmethod
    def trivial(cls, T: FiniteBrace, S: FiniteBrace) -> ActionMap:
        return cls(T, S, lambda s, t: np.broadcast_to(t, np.broadcast(s, t).shape).copy())


def _tuples(sizes: tuple[int, ...], samples: int | None, seed: int):
    """Index tuples over a product of ranges, exhaustive (lazy, chunked) or seeded."""
    if samples is None:
        total = int(np.prod(sizes, dtype=object))
        step = 1 << 17
        for lo in range(0, total, step):
            flat = np.arange(lo, min(total, lo + step), dtype=np.int64)
            out = []
            for r in reversed(sizes):
                flat, rem = np.divmod(flat, r)
                out.append(rem)
            yield tuple(reversed(out))
    else:
        rng = _rng(seed)
        done = 0
        while done < samples:
            k = min(1 << 17, samples - done)
            done += k
            yield tuple(rng.integers(0, r, size=k, dtype=np.int64) for r in sizes)


def _scan(name, chunks, predicate, *, exhaustive, seed) -> CheckReport:
    checked = 0
    for args in chunks:
        ok = np.asarray(predicate(*args))
        if not ok.all():
            k = int(np.argmin(ok))
            witness = tuple(int(a[k]) for a in args)
            return CheckReport(name, FAIL, checked + k + 1, witness, None if exhaustive else seed,
                               f"violated at {witness}")
        checked += ok.size
    return CheckReport(name, PASS if exhaustive else NO_COUNTEREXAMPLE, checked, None,
                       None if exhaustive else seed)


def _check(name, sizes, predicate, samples, seed, limit) -> CheckReport:
    # enumerate when that costs at most ~20x the requested sample
    total = int(np.prod(sizes, dtype=object))
    exhaustive = samples is None or total <= min(limit, 20 * samples)
    return _scan(name, _tuples(sizes, None if exhaustive else samples, seed), predicate,
                 exhaustive=exhaustive, seed=seed)


def check_cocycle(b: Cocycle, samples: int = DEFAULT_TRIPLES, seed: int = DEFAULT_SEED) -> CheckReport:
    """Normalization, symmetry and ``b(t1+t2,t3) + b(t1,t2) = b(t1,t2+t3) + b(t2,t3)``.

    Exhaustive for ``|T| <= 10^3``, seeded sampling above.
    """
    T, S = b.T, b.S
    n = T.size
    if n <= COCYCLE_EXHAUSTIVE_LIMIT:
        samples = None
    parts = [
        CheckReport("normalized", PASS if int(b(0, 0)) == 0 else FAIL, 1),
        _check("symmetric", (n, n), lambda x, y: b(x, y) == b(y, x), samples, seed, 0),
        _check("cocycle identity", (n, n, n),
               lambda x, y, z: S.add(b(T.add(x, y), z), b(x, y)) == S.add(b(x, T.add(y, z)), b(y, z)),
               samples, seed, 0),
    ]
    return combine("cocycle", parts)


def check_bi_additive(b: Cocycle, samples: int = DEFAULT_TRIPLES, seed: int = DEFAULT_SEED) -> CheckReport:
    T, S = b.T, b.S
    n = T.size
    if n <= COCYCLE_EXHAUSTIVE_LIMIT:
        samples = None
    return _check("bi-additive", (n, n, n), lambda x, y, z: b(T.add(x, y), z) == S.add(b(x, z), b(y, z)),
                  samples, seed, 0)


def check_action(alpha: ActionMap, samples: int = DEFAULT_TRIPLES, seed: int = DEFAULT_SEED) -> CheckReport:
    """``α_s`` respects both operations of T and ``α_{s·s'} = α_s∘α_{s'}``."""
    T, S = alpha.T, alpha.S
    nt, ns = T.size, S.size
    parts = [
        _check("action additive", (ns, nt, nt),
               lambda s, x, y: alpha(s, T.add(x, y)) == T.add(alpha(s, x), alpha(s, y)),
               samples, seed, COMPAT_EXHAUSTIVE_TUPLES),
        _check("action multiplicative", (ns, nt, nt),
               lambda s, x, y: alpha(s, T.mul(x, y)) == T.mul(alpha(s, x), alpha(s, y)),
               samples, seed, COMPAT_EXHAUSTIVE_TUPLES),
        _check("action homomorphism", (ns, ns, nt),
               lambda s, r, x: alpha(S.mul(s, r), x) == alpha(s, alpha(r, x)),
               samples, seed, COMPAT_EXHAUSTIVE_TUPLES),
    ]
    return combine("action", parts)


def check_compatibility_general(T: FiniteBrace, S: FiniteBrace, b: Cocycle, alpha: ActionMap,
                                samples: int = DEFAULT_TRIPLES, seed: int = DEFAULT_SEED) -> CheckReport:
    """``s·b(t2,t3) + b(t1·α_s(t2+t3), t1) = b(t1·α_s(t2), t1·α_s(t3)) + s`` over ``(s,t1,t2,t3)``."""

    def holds(s, t1, t2, t3):
        lhs = S.add(S.mul(s, b(t2, t3)), b(T.mul(t1, alpha(s, T.add(t2, t3))), t1))
        rhs = S.add(b(T.mul(t1, alpha(s, t2)), T.mul(t1, alpha(s, t3))), s)
        return lhs == rhs

    return _check("compatibility", (S.size, T.size, T.size, T.size), holds, samples, seed,
                  COMPAT_EXHAUSTIVE_TUPLES)


def check_biadditive_reduction(T: FiniteBrace, S: FiniteBrace, b: Cocycle, alpha: ActionMap,
                               samples: int = DEFAULT_TRIPLES, seed: int = DEFAULT_SEED) -> CheckReport:
    """For bi-additive ``b``: ``λ_s(b(t2,t3)) = b(α_s t2, α_s t3)`` and ``b(t2,t3) = b(λ_t1 t2, λ_t1 t3)``.

    For trivial ``T`` and ``S`` the second condition is vacuous and the first is
    the invariance ``b(t2,t3) = b(α_s t2, α_s t3)``.
    """
    parts = [
        _check("S-side invariance", (S.size, T.size, T.size),
               lambda s, x, y: S.lam(s, b(x, y)) == b(alpha(s, x), alpha(s, y)),
               samples, seed, COMPAT_EXHAUSTIVE_TUPLES),
    ]
    if not T.trivial:
        parts.append(_check("T-side invariance", (T.size, T.size, T.size),
                            lambda t, x, y: b(x, y) == b(T.lam(t, x), T.lam(t, y)),
                            samples, seed, COMPAT_EXHAUSTIVE_TUPLES))
    return combine("bi-additive reduction", parts)


def asymmetric_product(T: FiniteBrace, S: FiniteBrace, b: Cocycle, alpha: ActionMap, *,
                       check: bool = True, samples: int = 100_000, seed: int = DEFAULT_SEED,
                       name: str | None = None) -> FiniteBrace:
    """Brace on ``T × S`` with

    ``(t1,s1) + (t2,s2) = (t1+t2, s1+s2+b(t1,t2))`` and
    ``(t1,s1)·(t2,s2) = (t1·α_{s1}(t2), s1·s2)``.

    With ``check`` the cocycle and compatibility conditions are verified first
    (sampled with ``samples`` tuples when too large to enumerate).
    """
    if check:
        for report in (check_cocycle(b, samples, seed), check_compatibility_general(T, S, b, alpha, samples, seed)):
            if not report.ok:
                raise PreconditionError(f"{report.name} failed: {report.detail}")
    ns = S.size

    def split(x):
        return np.divmod(np.asarray(x, dtype=np.int64), ns)

    def add(x, y):
        t1, s1 = split(x)
        t2, s2 = split(y)
        return T.add(t1, t2) * ns + S.add(S.add(s1, s2), b(t1, t2))

    def mul(x, y):
        t1, s1 = split(x)
        t2, s2 = split(y)
        return T.mul(t1, alpha(s1, t2)) * ns + S.mul(s1, s2)

    def neg(x):
        t, s = split(x)
        nt = T.neg(t)
        # (t,s) + (−t, s') = 0  ⇔  s' = −s − b(t, −t)
        return nt * ns + S.sub(S.neg(s), b(t, nt))

    def inv(x):
        t, s = split(x)
        si = S.inv(s)
        return alpha(si, T.inv(t)) * ns + si

    gens = [int(g) * ns for g in T.mult_generators] + [int(g) for g in S.mult_generators]
    return FiniteBrace(T.size * ns, add, mul, neg, inv, name=name or f"{T.name} ⋊∘ {S.name}",
                       mult_generators=gens)


def product_lambda(T: FiniteBrace, S: FiniteBrace, b: Cocycle, alpha: ActionMap, x, y):
    """Closed-form lambda of the product:

    ``λ_(t1,s1)(t2,s2) = (λ_t1 α_s1(t2), λ_s1(s2) − b(λ_t1 α_s1(t2), t1))``.
    """
    ns = S.size
    t1, s1 = np.divmod(np.asarray(x, dtype=np.int64), ns)
    t2, s2 = np.divmod(np.asarray(y, dtype=np.int64), ns)
    u = T.lam(t1, alpha(s1, t2))
    return u * ns + S.sub(S.lam(s1, s2), b(u, t1))


def g_b_group(A: FiniteBrace, B: FiniteBrace, b: Bilinear, *, verify: bool = True) -> FiniteBrace:
    """The abelian group ``G_b(A,B)``: ``(x1,y1) + (x2,y2) = (x1+x2, y1+y2+b(x1,x2))``.

    Returned as a trivial brace.  Commutativity and associativity are checked
    over all pairs/triples when ``|A|·|B| <= 10^4``.
    """
    nb = B.size

    def bb(x, y):
        return np.asarray(b(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)), dtype=np.int64)

    def add(u, v):
        x1, y1 = np.divmod(np.asarray(u, dtype=np.int64), nb)
        x2, y2 = np.divmod(np.asarray(v, dtype=np.int64), nb)
        return A.add(x1, x2) * nb + B.add(B.add(y1, y2), bb(x1, x2))

    def neg(u):
        x, y = np.divmod(np.asarray(u, dtype=np.int64), nb)
        nx = A.neg(x)
        return nx * nb + B.sub(B.neg(y), bb(x, nx))

    G = FiniteBrace(A.size * nb, add, add, neg, neg, name=f"G_b({A.name}, {B.name})", trivial=True)
    if verify and G.size <= GROUP_EXHAUSTIVE_LIMIT:
        n = G.size
        for report in (
            _check("commutativity", (n, n), lambda u, v: G.add(u, v) == G.add(v, u), None, DEFAULT_SEED, 0),
            _check("associativity", (n, n, n), lambda u, v, w: G.add(G.add(u, v), w) == G.add(u, G.add(v, w)),
                   None if n**3 <= ASSOC_EXHAUSTIVE_TUPLES else DEFAULT_TRIPLES, DEFAULT_SEED, 0),
        ):
            if not report.ok:
                raise AssertionError(f"G_b {report.name} fails at {report.witness}")
    return G


def direct_sum(A: FiniteBrace, B: FiniteBrace) -> FiniteBrace:
    """``G_0(A,B)``."""
    return g_b_group(A, B, lambda x, y: np.zeros(np.broadcast(x, y).shape, dtype=np.int64), verify=False)


@dataclass
class TwistIsomorphism:
    """``φ_b(x,y) = (x, y + n·b(x,x))`` from ``G_b(A,B)`` to ``G_0(A,B)``, ``|B| = 2n+1``."""

    source: FiniteBrace
    target: FiniteBrace
    table: np.ndarray
    report: CheckReport

    def __call__(self, u):
        return self.table[np.asarray(u, dtype=np.int64)]


def phi_b_iso(A: FiniteBrace, B: FiniteBrace, b: Bilinear) -> TwistIsomorphism:
    if B.size % 2 == 0:
        raise PreconditionError(f"|B| = {B.size} is even; the twist isomorphism needs odd order")
    half = (B.size - 1) // 2
    G = g_b_group(A, B, b)
    G0 = direct_sum(A, B)
    x, y = np.divmod(G.elements(), B.size)
    bxx = np.asarray(b(x, x), dtype=np.int64)
    shift = np.zeros_like(bxx)
    for _ in range(half):
        shift = B.add(shift, bxx)
    table = x * B.size + B.add(y, shift)
    bijective = np.unique(table).size == G.size
    if not bijective:
        report = CheckReport("twist isomorphism", FAIL, G.size, None, detail="not bijective")
    else:
        exhaustive = G.size <= GROUP_EXHAUSTIVE_LIMIT
        report = _check("twist isomorphism", (G.size, G.size),
                        lambda u, v: table[G.add(u, v)] == G0.add(table[u], table[v]),
                        None if exhaustive else DEFAULT_TRIPLES, DEFAULT_SEED,
                        GROUP_EXHAUSTIVE_LIMIT**2)
    return TwistIsomorphism(G, G0, table, report)
