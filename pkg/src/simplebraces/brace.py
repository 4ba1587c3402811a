"""Finite left braces over an integer element universe, axiom checks, lambda maps and ideals.

A :class:`FiniteBrace` exposes vectorized operations on numpy index arrays.  Index
0 is the shared neutral element of ``+`` and ``·``.  Small braces (``size <=
TABLE_LIMIT``) cache full Cayley tables and answer every operation by lookup.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)

TABLE_LIMIT = 4096
PAIR_EXHAUSTIVE_LIMIT = 10_000
ASSOC_EXHAUSTIVE_LIMIT = 2_000
DEFAULT_SEED = 0x5EED
DEFAULT_TRIPLES = 1_000_000
CHUNK = 1 << 17

Op = Callable[[np.ndarray, np.ndarray], np.ndarray]
UnaryOp = Callable[[np.ndarray], np.ndarray]

PASS, FAIL, NO_COUNTEREXAMPLE = "pass", "fail", "no-counterexample"


class SizeGuardError(RuntimeError):
    """Raised when an operation would enumerate or tabulate an oversized brace."""


@dataclass
class CheckReport:
    """Outcome of one verification.

    ``status`` is ``pass`` for an exhaustive success, ``no-counterexample`` when
    only a sample was examined, and ``fail`` with a ``witness`` otherwise.
    """

    name: str
    status: str
    checked: int = 0
    witness: tuple | None = None
    seed: int | None = None
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "checked": self.checked,
            "witness": None if self.witness is None else [int(w) for w in self.witness],
            "seed": self.seed,
            "detail": self.detail,
            "seconds": round(self.seconds, 4),
        }


def combine(name: str, parts: Sequence[CheckReport]) -> CheckReport:
    failed = next((r for r in parts if r.status == FAIL), None)
    if failed is not None:
        return CheckReport(name, FAIL, sum(r.checked for r in parts), failed.witness, failed.seed,
                           f"{failed.name}: {failed.detail}".rstrip(": "))
    status = PASS if all(r.status == PASS for r in parts) else NO_COUNTEREXAMPLE
    seeds = {r.seed for r in parts if r.seed is not None}
    return CheckReport(name, status, sum(r.checked for r in parts), None, min(seeds) if seeds else None,
                       "; ".join(f"{r.name}={r.status}" for r in parts))


class MixedRadix:
    """Index <-> coordinate tuple, first coordinate most significant."""

    def __init__(self, radices: Sequence[int]):
        self.radices = tuple(int(r) for r in radices)
        strides = [1] * len(self.radices)
        for k in range(len(self.radices) - 2, -1, -1):
            strides[k] = strides[k + 1] * self.radices[k + 1]
        self.strides = tuple(strides)
        self.size = math.prod(self.radices)
        self._rad = np.array(self.radices, dtype=np.int64)

    def decode(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        out = np.empty(idx.shape + (len(self.radices),), dtype=np.int64)
        rest = idx.copy()
        for k in range(len(self.radices) - 1, -1, -1):
            rest, out[..., k] = np.divmod(rest, self.radices[k])
        return out

    def encode(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        idx = np.zeros(coords.shape[:-1], dtype=np.int64)
        for k, r in enumerate(self.radices):
            idx = idx * r + coords[..., k] % r
        return idx


def _i64(x) -> np.ndarray:
    return np.asarray(x, dtype=np.int64)


class FiniteBrace:
    """A finite left brace given by vectorized operations on indices ``0..size-1``."""

    def __init__(
        self,
        size: int,
        add: Op,
        mul: Op,
        neg: UnaryOp,
        inv: UnaryOp,
        *,
        name: str = "brace",
        coords: MixedRadix | None = None,
        mult_generators: Sequence[int] | None = None,
        trivial: bool = False,
        table_limit: int = TABLE_LIMIT,
    ):
        if size < 1:
            raise ValueError("a brace has at least one element")
        self.size = int(size)
        self.name = name
        self.coords = coords
        self.trivial = trivial
        self._add, self._mul, self._neg, self._inv = add, mul, neg, inv
        self._gens_hint = None if mult_generators is None else [int(g) for g in mult_generators]
        self.add_table = self.mul_table = None
        if self.size <= table_limit:
            self._tabulate()

    def _tabulate(self):
        x = np.arange(self.size, dtype=np.int64)
        add_t = np.empty((self.size, self.size), dtype=np.int32)
        mul_t = np.empty((self.size, self.size), dtype=np.int32)
        rows = max(1, CHUNK // self.size)
        for lo in range(0, self.size, rows):
            block = x[lo:lo + rows, None]
            add_t[lo:lo + rows] = self._add(block, x[None, :])
            mul_t[lo:lo + rows] = self._mul(block, x[None, :])
        neg_t = self._neg(x).astype(np.int32)
        inv_t = self._inv(x).astype(np.int32)
        self.add_table, self.mul_table = add_t, mul_t
        self._add = lambda a, b: add_t[a, b]
        self._mul = lambda a, b: mul_t[a, b]
        self._neg = lambda a: neg_t[a]
        self._inv = lambda a: inv_t[a]

    @classmethod
    def from_tables(cls, add_table, mul_table, name: str = "tabled") -> FiniteBrace:
        """Brace from explicit Cayley tables (inverses read off the tables)."""
        add_t = np.asarray(add_table, dtype=np.int64)
        mul_t = np.asarray(mul_table, dtype=np.int64)
        neg_t = np.argmax(add_t == 0, axis=1)
        inv_t = np.argmax(mul_t == 0, axis=1)
        return cls(
            len(add_t),
            lambda a, b: add_t[a, b],
            lambda a, b: mul_t[a, b],
            lambda a: neg_t[a],
            lambda a: inv_t[a],
            name=name,
        )

    @property
    def has_tables(self) -> bool:
        return self.add_table is not None

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteBrace({self.name!r}, size={self.size})"

    def add(self, x, y):
        return self._add(_i64(x), _i64(y))

    def mul(self, x, y):
        return self._mul(_i64(x), _i64(y))

    def neg(self, x):
        return self._neg(_i64(x))

    def inv(self, x):
        return self._inv(_i64(x))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def lam(self, a, b):
        """``λ_a(b) = a·b − a``."""
        return self.sub(self.mul(a, b), a)

    def conj(self, a, x):
        """``a·x·a⁻¹``."""
        return self.mul(self.mul(a, x), self.inv(a))

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def require_enumerable(self, limit: int):
        if self.size > limit:
            raise SizeGuardError(f"{self.name} has {self.size} elements, above the limit {limit}")

    @cached_property
    def lambda_table(self) -> np.ndarray:
        """``L[a, b] = λ_a(b)``; only for tabled braces."""
        if not self.has_tables:
            raise SizeGuardError("lambda table requires a tabled brace")
        return self.add_table[self.mul_table, self.neg(np.arange(self.size))[:, None]]

    @cached_property
    def mult_generators(self) -> list[int]:
        """A generating set of ``(B,·)``; the constructor hint if given, else greedy."""
        if self._gens_hint is not None:
            return list(self._gens_hint)
        gens: list[int] = []
        mask = np.zeros(self.size, dtype=bool)
        mask[0] = True
        for x in range(1, self.size):
            if not mask[x]:
                gens.append(x)
                mask = mult_span(self, gens)
                if mask.all():
                    break
        return gens


def trivial_abelian(radices: Sequence[int], name: str | None = None) -> FiniteBrace:
    """Trivial brace on ``Z/r_1 × ... × Z/r_k`` (both operations coordinatewise addition)."""
    mr = MixedRadix(radices)
    rad = mr._rad

    def add(a, b):
        return mr.encode((mr.decode(a) + mr.decode(b)) % rad)

    def neg(a):
        return mr.encode((-mr.decode(a)) % rad)

    gens = [mr.strides[k] for k, r in enumerate(mr.radices) if r > 1]
    label = name or "x".join(f"Z/{r}" for r in radices) or "0"
    return FiniteBrace(mr.size, add, add, neg, neg, name=label, coords=mr, mult_generators=gens, trivial=True)


def trivial_cyclic(k: int) -> FiniteBrace:
    return trivial_abelian([k], name=f"trivial Z/{k}")


def direct_product(B1: FiniteBrace, B2: FiniteBrace) -> FiniteBrace:
    """Componentwise brace on ``B1 × B2``, index ``x1·|B2| + x2``."""
    n2 = B2.size

    def split(x):
        return np.divmod(x, n2)

    def lift2(op1, op2):
        def op(a, b):
            a1, a2 = split(a)
            b1, b2 = split(b)
            return op1(a1, b1) * n2 + op2(a2, b2)
        return op

    def lift1(op1, op2):
        def op(a):
            a1, a2 = split(a)
            return op1(a1) * n2 + op2(a2)
        return op

    gens = [g * n2 for g in B1.mult_generators] + list(B2.mult_generators)
    return FiniteBrace(
        B1.size * n2,
        lift2(B1.add, B2.add),
        lift2(B1.mul, B2.mul),
        lift1(B1.neg, B2.neg),
        lift1(B1.inv, B2.inv),
        name=f"({B1.name}) x ({B2.name})",
        mult_generators=gens,
        trivial=B1.trivial and B2.trivial,
    )


# ---------------------------------------------------------------------------
# enumeration helpers


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _pair_chunks(n: int):
    rows = max(1, CHUNK // n)
    y = np.arange(n, dtype=np.int64)[None, :]
    for lo in range(0, n, rows):
        x = np.arange(lo, min(n, lo + rows), dtype=np.int64)[:, None]
        yield np.broadcast_to(x, (len(x), n)).ravel(), np.broadcast_to(y, (len(x), n)).ravel()


def _triple_chunks(n: int):
    for a in range(n):
        for b, c in _pair_chunks(n):
            yield np.full_like(b, a), b, c


def _sampled(n: int, count: int, arity: int, seed: int):
    rng = _rng(seed)
    done = 0
    while done < count:
        k = min(CHUNK, count - done)
        done += k
        yield tuple(rng.integers(0, n, size=k, dtype=np.int64) for _ in range(arity))


def _scan(name: str, chunks, predicate, arity_label: str, *, exhaustive: bool, seed=None) -> CheckReport:
    checked = 0
    for args in chunks:
        ok = np.asarray(predicate(*args))
        if not ok.all():
            k = int(np.argmin(ok))
            witness = tuple(int(a[k]) for a in args)
            return CheckReport(name, FAIL, checked + k + 1, witness, seed, f"violated at {arity_label}={witness}")
        checked += len(ok)
    return CheckReport(name, PASS if exhaustive else NO_COUNTEREXAMPLE, checked, None, seed)


def check_law(B: FiniteBrace, name: str, predicate, arity: int, *, samples: int | None, seed: int,
              exhaustive_limit: int | None = None) -> CheckReport:
    """Exhaustive scan when ``samples`` is None (or the law is cheap enough), else seeded sampling."""
    cost = B.size**arity
    exhaustive = samples is None or (exhaustive_limit is not None and B.size <= exhaustive_limit)
    if exhaustive:
        chunks = {1: (lambda: ((np.arange(B.size),),)), 2: (lambda: _pair_chunks(B.size)),
                  3: (lambda: _triple_chunks(B.size))}[arity]()
        log.debug("%s: exhaustive over %d tuples", name, cost)
        return _scan(name, chunks, predicate, "abc"[:arity], exhaustive=True)
    return _scan(name, _sampled(B.size, samples, arity, seed), predicate, "abc"[:arity], exhaustive=False, seed=seed)


# ---------------------------------------------------------------------------
# axioms and lambda action


def _table_triples(B: FiniteBrace, name: str, rows) -> CheckReport:
    """Exhaustive triple law on a tabled brace; ``rows(a)`` is the N×N verdict for first argument ``a``."""
    for a in range(B.size):
        ok = rows(a)
        if not ok.all():
            b, c = np.argwhere(~ok)[0]
            return CheckReport(name, FAIL, a * B.size**2, (a, int(b), int(c)), detail=f"violated at abc={(a, int(b), int(c))}")
    return CheckReport(name, PASS, B.size**3)


def verify_brace_axioms(B: FiniteBrace, triples: int | None = DEFAULT_TRIPLES, seed: int = DEFAULT_SEED,
                        *, pair_limit: int = PAIR_EXHAUSTIVE_LIMIT) -> CheckReport:
    """Group laws of ``+`` and ``·`` and the compatibility law ``a(b+c)+a = ab+ac``.

    Pair laws run over all pairs when ``size <= pair_limit``; associativity is
    exhaustive up to ``ASSOC_EXHAUSTIVE_LIMIT``; compatibility is sampled over
    ``triples`` seeded triples, or exhaustive when ``triples`` is None or
    covers all of ``B³``.
    """
    pair_samples = None if B.size <= pair_limit else (triples or DEFAULT_TRIPLES)
    zero = np.int64(0)
    parts = [
        check_law(B, "additive identity", lambda a: (B.add(a, zero) == a) & (B.add(zero, a) == a), 1,
                  samples=None, seed=seed),
        check_law(B, "multiplicative identity", lambda a: (B.mul(a, zero) == a) & (B.mul(zero, a) == a), 1,
                  samples=None, seed=seed),
        check_law(B, "additive inverse", lambda a: B.add(a, B.neg(a)) == 0, 1, samples=None, seed=seed),
        check_law(B, "multiplicative inverse",
                  lambda a: (B.mul(a, B.inv(a)) == 0) & (B.mul(B.inv(a), a) == 0), 1, samples=None, seed=seed),
        check_law(B, "additive commutativity", lambda a, b: B.add(a, b) == B.add(b, a), 2,
                  samples=pair_samples, seed=seed),
    ]
    add_t, mul_t = B.add_table, B.mul_table
    if B.has_tables and B.size <= ASSOC_EXHAUSTIVE_LIMIT:
        parts.append(_table_triples(B, "additive associativity", lambda a: add_t[add_t[a]] == add_t[a][add_t]))
        parts.append(_table_triples(B, "multiplicative associativity",
                                    lambda a: mul_t[mul_t[a]] == mul_t[a][mul_t]))
    else:
        parts.append(check_law(B, "additive associativity",
                               lambda a, b, c: B.add(B.add(a, b), c) == B.add(a, B.add(b, c)), 3,
                               samples=triples, seed=seed, exhaustive_limit=ASSOC_EXHAUSTIVE_LIMIT))
        parts.append(check_law(B, "multiplicative associativity",
                               lambda a, b, c: B.mul(B.mul(a, b), c) == B.mul(a, B.mul(b, c)), 3,
                               samples=triples, seed=seed, exhaustive_limit=ASSOC_EXHAUSTIVE_LIMIT))
    if triples is not None and B.size**3 <= triples:
        triples = None
    if B.has_tables and triples is None:
        def compat_rows(a):
            Ma = mul_t[a]
            return add_t[Ma[add_t], a] == add_t[Ma[:, None], Ma[None, :]]
        parts.append(_table_triples(B, "compatibility", compat_rows))
    else:
        parts.append(check_law(B, "compatibility",
                               lambda a, b, c: B.add(B.mul(a, B.add(b, c)), a) == B.add(B.mul(a, b), B.mul(a, c)),
                               3, samples=triples, seed=seed))
    return combine("brace axioms", parts)


def lam(B: FiniteBrace, a, b):
    return B.lam(a, b)


def check_lambda_action(B: FiniteBrace, samples: int = DEFAULT_TRIPLES, seed: int = DEFAULT_SEED,
                        *, exhaustive_limit: int = PAIR_EXHAUSTIVE_LIMIT) -> CheckReport:
    """Each ``λ_a`` is an additive automorphism and ``λ_{ab} = λ_a∘λ_b``.

    Tabled braces below ``exhaustive_limit`` are checked over all triples with
    whole-row table operations; otherwise ``samples`` seeded triples are used.
    Also checks the identities ``ab⁻¹ = a − λ_{ab⁻¹}(b)`` and ``a − b = a·λ_{a⁻¹b}(b⁻¹)``.
    """
    parts = []
    if B.has_tables and B.size <= exhaustive_limit:
        L, add_t, mul_t = B.lambda_table, B.add_table, B.mul_table
        perm_ok = np.all(np.sort(L, axis=1) == np.arange(B.size)[None, :], axis=1)
        bad = np.flatnonzero(~perm_ok)
        parts.append(CheckReport("lambda bijective", FAIL if bad.size else PASS, B.size,
                                 (int(bad[0]),) if bad.size else None))
        hom = comp = None
        for a in range(B.size):
            La = L[a]
            if hom is None:
                diff = La[add_t] != add_t[La[:, None], La[None, :]]
                if diff.any():
                    b, c = np.argwhere(diff)[0]
                    hom = (a, int(b), int(c))
            if comp is None:
                diff = L[mul_t[a]] != La[L]
                if diff.any():
                    b, c = np.argwhere(diff)[0]
                    comp = (a, int(b), int(c))
            if hom and comp:
                break
        n3 = B.size**3
        parts.append(CheckReport("lambda additive", FAIL if hom else PASS, n3, hom))
        parts.append(CheckReport("lambda action", FAIL if comp else PASS, n3, comp))
        pair_samples = None
    else:
        parts.append(check_law(B, "lambda additive",
                               lambda a, b, c: B.lam(a, B.add(b, c)) == B.add(B.lam(a, b), B.lam(a, c)), 3,
                               samples=samples, seed=seed))
        parts.append(check_law(B, "lambda action",
                               lambda a, b, c: B.lam(B.mul(a, b), c) == B.lam(a, B.lam(b, c)), 3,
                               samples=samples, seed=seed))
        pair_samples = None if B.size <= exhaustive_limit else samples

    def quotient_identity(a, b):
        q = B.mul(a, B.inv(b))
        return q == B.sub(a, B.lam(q, b))

    def difference_identity(a, b):
        return B.sub(a, b) == B.mul(a, B.lam(B.mul(B.inv(a), b), B.inv(b)))

    parts.append(check_law(B, "quotient identity", quotient_identity, 2, samples=pair_samples, seed=seed))
    parts.append(check_law(B, "difference identity", difference_identity, 2, samples=pair_samples, seed=seed))
    return combine("lambda action", parts)


# ---------------------------------------------------------------------------
# subgroups


def as_mask(B: FiniteBrace, subset) -> np.ndarray:
    subset = np.asarray(subset)
    if subset.dtype == bool:
        if subset.shape != (B.size,):
            raise ValueError("mask length must equal the brace size")
        return subset
    mask = np.zeros(B.size, dtype=bool)
    mask[subset.astype(np.int64)] = True
    return mask


def _extend_additive(B: FiniteBrace, mask: np.ndarray, x: int) -> np.ndarray:
    """Grow the additive subgroup ``mask`` to ``<mask, x>`` in place; return the new elements."""
    base = np.flatnonzero(mask)
    new = []
    y = np.int64(x)
    while not mask[y]:
        coset = np.asarray(B.add(base, y), dtype=np.int64)
        mask[coset] = True
        new.append(coset)
        y = np.int64(B.add(y, x))
    return np.concatenate(new) if new else np.empty(0, dtype=np.int64)


def additive_span(B: FiniteBrace, gens: Iterable[int]) -> np.ndarray:
    mask = np.zeros(B.size, dtype=bool)
    mask[0] = True
    for g in gens:
        _extend_additive(B, mask, int(g))
    return mask


def mult_span(B: FiniteBrace, gens: Iterable[int]) -> np.ndarray:
    """Multiplicative subgroup generated by ``gens`` (breadth-first closure)."""
    gens = [int(g) for g in gens]
    mask = np.zeros(B.size, dtype=bool)
    mask[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    while frontier.size and gens:
        nxt = np.unique(np.concatenate([np.asarray(B.mul(frontier, g), dtype=np.int64) for g in gens]))
        nxt = nxt[~mask[nxt]]
        mask[nxt] = True
        frontier = nxt
    return mask


def _greedy_generators(members: np.ndarray, span_step) -> list[int]:
    """Pick generators from ``members`` until ``span_step`` covers them all."""
    gens: list[int] = []
    covered = None
    for x in members:
        x = int(x)
        if x == 0 or (covered is not None and covered[x]):
            continue
        gens.append(x)
        covered = span_step(gens)
        if covered[members].all():
            break
    return gens


def additive_generators(B: FiniteBrace, mask: np.ndarray) -> list[int]:
    members = np.flatnonzero(mask)
    span = np.zeros(B.size, dtype=bool)
    span[0] = True
    gens: list[int] = []
    for x in members:
        if not span[x]:
            gens.append(int(x))
            _extend_additive(B, span, int(x))
    return gens


def mult_generators_of(B: FiniteBrace, mask: np.ndarray) -> list[int]:
    return _greedy_generators(np.flatnonzero(mask), lambda g: mult_span(B, g))


def is_additive_subgroup(B: FiniteBrace, mask: np.ndarray) -> bool:
    """Contains 0 and is closed under adding each of its own generators."""
    if not mask[0]:
        return False
    members = np.flatnonzero(mask)
    return all(mask[B.add(members, g)].all() for g in additive_generators(B, mask))


def is_mult_subgroup(B: FiniteBrace, mask: np.ndarray) -> bool:
    if not mask[0]:
        return False
    members = np.flatnonzero(mask)
    return all(mask[B.mul(members, g)].all() for g in mult_generators_of(B, mask))


def _acting_elements(B: FiniteBrace) -> np.ndarray:
    # closure under λ_g, conj_g for generators g of (B,·) implies closure under all of B
    if B.has_tables:
        return np.arange(B.size, dtype=np.int64)
    return np.asarray(B.mult_generators, dtype=np.int64)


def is_left_ideal(B: FiniteBrace, L) -> bool:
    mask = as_mask(B, L)
    if not is_additive_subgroup(B, mask):
        return False
    members = np.flatnonzero(mask)
    if B.has_tables:
        return bool(mask[B.lambda_table[:, members]].all())
    return all(mask[B.lam(a, members)].all() for a in _acting_elements(B))


def is_ideal(B: FiniteBrace, I) -> bool:
    """Normal subgroup of ``(B,·)`` closed under every ``λ_a`` (additive closure also asserted)."""
    mask = as_mask(B, I)
    if not is_mult_subgroup(B, mask):
        return False
    members = np.flatnonzero(mask)
    for a in _acting_elements(B):
        if not mask[B.conj(a, members)].all() or not mask[B.lam(a, members)].all():
            return False
    if not is_additive_subgroup(B, mask):
        raise AssertionError("λ-closed normal subgroup that is not an additive subgroup")
    return True


def ideal_closure(B: FiniteBrace, generators, *, acting: Sequence[int] | None = None,
                  trace: list | None = None) -> np.ndarray:
    """Smallest ideal containing ``generators``, as a boolean mask.

    Work-list closure: each batch of new elements is absorbed into the additive
    subgroup, then its ``λ_a`` images and conjugates ``a·x·a⁻¹`` for ``a`` in
    ``acting`` (default: generators of ``(B,·)``, which yields the same fixed
    point as acting by all of ``B``) become the next batch.  ``trace`` receives
    the member count after each batch.
    """
    acting = np.asarray(B.mult_generators if acting is None else acting, dtype=np.int64)
    mask = np.zeros(B.size, dtype=bool)
    mask[0] = True
    pending = np.unique(np.asarray(generators, dtype=np.int64).ravel())
    while pending.size:
        fresh = [_extend_additive(B, mask, int(x)) for x in pending if not mask[x]]
        fresh = [f for f in fresh if f.size]
        if not fresh:
            break
        new = np.concatenate(fresh)
        if trace is not None:
            trace.append(int(mask.sum()))
        images = []
        for a in acting:
            images.append(np.asarray(B.lam(a, new), dtype=np.int64))
            images.append(np.asarray(B.conj(a, new), dtype=np.int64))
        images = np.concatenate(images)
        pending = np.unique(images[~mask[images]])
    return mask


@dataclass
class SimplicityResult:
    simple: bool | None
    status: str
    checked: int
    certificate: np.ndarray | None = None
    generator: int | None = None
    seed: int | None = None
    seconds: float = 0.0

    def __bool__(self):
        return bool(self.simple)

    def report(self) -> CheckReport:
        witness = None if self.generator is None else (self.generator,)
        detail = ""
        if self.certificate is not None:
            detail = f"proper ideal of size {int(self.certificate.sum())} generated by {self.generator}"
        return CheckReport("simplicity", self.status, self.checked, witness, self.seed, detail, self.seconds)


def is_simple(B: FiniteBrace, samples: int | None = None, seed: int = DEFAULT_SEED,
              threads: int = 1) -> SimplicityResult:
    """Certify simplicity by showing every (or every sampled) nonzero singleton generates ``B``.

    A closure smaller than ``B`` is a proper nonzero ideal and is returned as the
    certificate; with several, the one from the smallest generator is reported.
    """
    if B.size < 2:
        raise ValueError("simplicity needs at least two elements")
    start = time.perf_counter()
    if samples is None or samples >= B.size - 1:
        gens = np.arange(1, B.size, dtype=np.int64)
        exhaustive = True
    else:
        gens = np.sort(_rng(seed).choice(np.arange(1, B.size, dtype=np.int64), size=samples, replace=False))
        exhaustive = False
    B.mult_generators  # warm the cache before threads share it

    def run(chunk):
        for g in chunk:
            mask = ideal_closure(B, [g])
            if not mask.all():
                return int(g), mask
        return None

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            found = [r for r in pool.map(run, np.array_split(gens, threads)) if r is not None]
    else:
        found = [r] if (r := run(gens)) is not None else []
    if found:
        g, mask = min(found, key=lambda r: r[0])
        return SimplicityResult(False, FAIL, len(gens), mask, g, None if exhaustive else seed,
                                time.perf_counter() - start)
    return SimplicityResult(True if exhaustive else None, PASS if exhaustive else NO_COUNTEREXAMPLE,
                            len(gens), seed=None if exhaustive else seed, seconds=time.perf_counter() - start)


def lemma_ideal_check(B: FiniteBrace, I, samples: int = DEFAULT_TRIPLES, seed: int = DEFAULT_SEED,
                      *, exhaustive_limit: int = 50_000_000) -> CheckReport:
    """``λ_b(a) − a ∈ I`` for all ``a ∈ B`` and ``b ∈ I`` (seeded pairs when ``|B|·|I|`` is too large)."""
    mask = as_mask(B, I)
    members = np.flatnonzero(mask)
    if B.size * members.size > exhaustive_limit:
        rng = _rng(seed)
        a = rng.integers(0, B.size, size=samples)
        b = members[rng.integers(0, members.size, size=samples)]
        ok = mask[B.sub(B.lam(b, a), a)]
        if not ok.all():
            k = int(np.argmin(ok))
            return CheckReport("ideal lemma", FAIL, k + 1, (int(a[k]), int(b[k])), seed)
        return CheckReport("ideal lemma", NO_COUNTEREXAMPLE, samples, seed=seed)
    everything = B.elements()
    checked = 0
    for b in members:
        vals = B.sub(B.lam(b, everything), everything)
        ok = mask[vals]
        if not ok.all():
            a = int(np.argmin(ok))
            return CheckReport("ideal lemma", FAIL, checked + a + 1, (a, int(b)))
        checked += B.size
    return CheckReport("ideal lemma", PASS, checked)
