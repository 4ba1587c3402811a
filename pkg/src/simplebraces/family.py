"""The simple left braces ``T ⋊∘ S`` built from cyclically indexed prime powers.

Blocks are indexed ``0..m-1`` with ``i-1`` taken mod ``m``.  Block ``i`` carries
``R_i = Z/(p_i^n_i)``, ``l_{i-1} = p_{i-1}^n_{i-1} − p_{i-1}^(n_{i-1}−1)``, the
companion matrix ``C_i`` of ``q_{i-1}`` over ``R_i``, the hyperbolic form
``J_i`` on ``T_i = R_i^(2 l_{i-1})`` and ``F_i = diag(C_iᵗ, C_i⁻¹)``.

``T = T_1^s_1 × ... × T_m^s_m`` and ``S = R_1 × ... × R_m`` are trivial braces,
``b`` sums the forms ``u J_i vᵗ`` over the copies of each block, and ``α_a``
multiplies every copy of block ``i`` by ``F_i^(a_{i-1})``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .asymmetric import ActionMap, Cocycle, asymmetric_product
from .brace import (
    DEFAULT_SEED,
    FAIL,
    NO_COUNTEREXAMPLE,
    PASS,
    CheckReport,
    FiniteBrace,
    SizeGuardError,
    combine,
    trivial_abelian,
)
from .residue import (
    Modulus,
    Poly,
    RowVector,
    SquareMatrix,
    companion,
    f_matrix,
    factorize,
    hyperbolic_form,
    is_prime,
    matrix_order,
    q_poly,
)

DEFAULT_MAX_ORDER = 10**7
INDEX_LIMIT = 2**62
SYLOW_PAIR_LIMIT = 4_000_000


class ParamsError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    primes: tuple[int, ...]
    exponents: tuple[int, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        for name in ("primes", "exponents", "multiplicities"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))
        m = len(self.primes)
        if m < 2:
            raise ParamsError("m > 1 required: give at least two primes")
        if len(self.exponents) != m or len(self.multiplicities) != m:
            raise ParamsError("primes, exponents and multiplicities must have the same length")
        bad = [p for p in self.primes if not is_prime(p)]
        if bad:
            raise ParamsError(f"not prime: {bad}")
        if len(set(self.primes)) != m:
            raise ParamsError("primes must be pairwise distinct")
        if min(self.exponents) < 1 or min(self.multiplicities) < 1:
            raise ParamsError("exponents and multiplicities must be positive")
        for p, n in zip(self.primes, self.exponents):
            Modulus(p, n)

    @property
    def m(self) -> int:
        return len(self.primes)

    @classmethod
    def minimal(cls) -> FamilyParams:
        return cls((2, 3), (1, 1), (1, 1))

    def prev(self, i: int) -> int:
        return (i - 1) % self.m

    def modulus(self, i: int) -> int:
        return self.primes[i] ** self.exponents[i]

    @property
    def lengths(self) -> tuple[int, ...]:
        """``l_i = p_i^n_i − p_i^(n_i−1)``."""
        return tuple(p**n - p ** (n - 1) for p, n in zip(self.primes, self.exponents))

    def sylow_rank(self, i: int) -> int:
        """``2 s_i l_{i-1} + 1``."""
        return 2 * self.multiplicities[i] * self.lengths[self.prev(i)] + 1

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "primes": list(self.primes),
            "exponents": list(self.exponents),
            "multiplicities": list(self.multiplicities),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> FamilyParams:
        try:
            params = cls(data["primes"], data["exponents"], data["multiplicities"])
        except KeyError as exc:
            raise ParamsError(f"missing field {exc}") from None
        if "m" in data and int(data["m"]) != params.m:
            raise ParamsError(f"m = {data['m']} but {params.m} primes given")
        return params

    @classmethod
    def load(cls, path: str | Path) -> FamilyParams:
        return cls.from_dict(json.loads(Path(path).read_text()))


def brace_order(params: FamilyParams) -> int:
    return math.prod(params.modulus(i) ** params.sylow_rank(i) for i in range(params.m))


def additive_signature(params: FamilyParams) -> list[tuple[int, int, int]]:
    """``[(p_i, n_i, 2 s_i l_{i-1} + 1)]``: ``(B,+) ≅ ⊕ (Z/p_i^n_i)^(2 s_i l_{i-1} + 1)``."""
    return [(params.primes[i], params.exponents[i], params.sylow_rank(i)) for i in range(params.m)]


@dataclass(frozen=True)
class BlockData:
    index: int
    modulus: Modulus
    q: Poly
    C: SquareMatrix
    J: SquareMatrix
    F: SquareMatrix
    action_order: int
    action_root: int

    @property
    def l(self) -> int:
        return self.C.size

    @property
    def dim(self) -> int:
        return 2 * self.C.size


def derive(params: FamilyParams) -> list[BlockData]:
    blocks = []
    for i in range(params.m):
        j = params.prev(i)
        R = Modulus(params.primes[i], params.exponents[i])
        q = q_poly(params.primes[j], params.exponents[j], R)
        C = companion(q)
        blocks.append(BlockData(
            index=i,
            modulus=R,
            q=q,
            C=C,
            J=hyperbolic_form(C.size, R),
            F=f_matrix(C),
            action_order=params.primes[j] ** params.exponents[j],
            action_root=params.primes[j] ** (params.exponents[j] - 1),
        ))
    return blocks


def block_identities(block: BlockData, *, order_cap: int = 1 << 16) -> CheckReport:
    """``q(C) = 0``, ``ord(C) = p_{i-1}^n_{i-1}``, ``F J Fᵗ = J``, ``F^(p^(n-1)) − I`` invertible, ``J`` non-singular."""
    C, J, F = block.C, block.J, block.F
    I = SquareMatrix.identity(block.dim, block.modulus)
    checks = {
        "q(C) = 0": block.q.evaluate(C) == SquareMatrix.zeros(C.size, block.modulus),
        "order of C": matrix_order(C, order_cap) == block.action_order,
        "F J F^t = J": F @ J @ F.transpose() == J,
        "F^root - I invertible": ((F ** block.action_root) - I).is_invertible(),
        "form non-singular": J.is_invertible(),
    }
    parts = [CheckReport(f"block {block.index + 1}: {k}", PASS if v else FAIL, 1) for k, v in checks.items()]
    return combine(f"block {block.index + 1} identities", parts)


def pairing_partner(block: BlockData, u: RowVector) -> RowVector:
    """Some ``v`` with ``u J vᵗ ≠ 0`` for nonzero ``u`` (a unit vector suffices)."""
    w = u @ block.J
    k = next(k for k, e in enumerate(w.entries) if e)
    return RowVector(tuple(int(j == k) for j in range(block.dim)), block.modulus)


@dataclass(frozen=True)
class _Slot:
    block: int
    copy: int
    start: int
    dim: int


class Family:
    """A constructed member of the family together with its building blocks."""

    def __init__(self, params: FamilyParams, *, check: bool = False, seed: int = DEFAULT_SEED):
        self.params = params
        self.blocks = derive(params)
        self.order = brace_order(params)
        radices: list[int] = []
        self.slots: list[_Slot] = []
        for blk, s in zip(self.blocks, params.multiplicities):
            for copy in range(s):
                self.slots.append(_Slot(blk.index, copy, len(radices), blk.dim))
                radices += [blk.modulus.value] * blk.dim
        self.T = trivial_abelian(radices, name="T")
        self.S = trivial_abelian([b.modulus.value for b in self.blocks], name="S")
        self._fpow = [self._powers(b) for b in self.blocks]
        self.cocycle = Cocycle(self.T, self.S, self._b, claimed_symmetric=True, claimed_bi_additive=True)
        self.action = ActionMap(self.T, self.S, self._alpha)
        label = "family(p={}, n={}, s={})".format(*(",".join(map(str, v)) for v in
                                                      (params.primes, params.exponents, params.multiplicities)))
        self.brace: FiniteBrace = asymmetric_product(self.T, self.S, self.cocycle, self.action,
                                                     check=check, seed=seed, name=label)
        if self.brace.size != self.order:
            raise AssertionError("brace order disagrees with the order formula")

    @staticmethod
    def _powers(block: BlockData) -> np.ndarray:
        out = np.empty((block.action_order, block.dim, block.dim), dtype=np.int64)
        P = SquareMatrix.identity(block.dim, block.modulus)
        for e in range(block.action_order):
            out[e] = P.tolist()
            P = P @ block.F
        return out

    # vectorized building blocks -------------------------------------------------

    def _b(self, t1, t2):
        u, v = self.T.coords.decode(t1), self.T.coords.decode(t2)
        u, v = np.broadcast_arrays(u, v)
        out = np.zeros(u.shape[:-1] + (self.params.m,), dtype=np.int64)
        for slot in self.slots:
            q = self.blocks[slot.block].modulus.value
            l = slot.dim // 2
            acc = out[..., slot.block]
            for c in range(slot.start, slot.start + l):
                acc = (acc + u[..., c] * v[..., c + l]) % q
                acc = (acc + u[..., c + l] * v[..., c]) % q
            out[..., slot.block] = acc
        return self.S.coords.encode(out)

    def _alpha(self, s, t):
        s, t = np.broadcast_arrays(np.asarray(s, dtype=np.int64), np.asarray(t, dtype=np.int64))
        a = self.S.coords.decode(s)
        u = self.T.coords.decode(t)
        out = u.copy()
        for slot in self.slots:
            blk = self.blocks[slot.block]
            q = blk.modulus.value
            e = a[..., self.params.prev(slot.block)] % blk.action_order
            M = self._fpow[slot.block][e]  # (..., d, d)
            acc = np.zeros(u.shape[:-1] + (slot.dim,), dtype=np.int64)
            for r in range(slot.dim):
                acc = (acc + u[..., slot.start + r, None] * M[..., r, :]) % q
            out[..., slot.start:slot.start + slot.dim] = acc
        return self.T.coords.encode(out)

    # coordinates --------------------------------------------------------------

    def split(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Brace indices -> (T coordinates, S coordinates)."""
        t, s = np.divmod(np.asarray(x, dtype=np.int64), self.S.size)
        return self.T.coords.decode(t), self.S.coords.decode(s)

    def join(self, t_coords, s_coords) -> np.ndarray:
        return self.T.coords.encode(t_coords) * self.S.size + self.S.coords.encode(s_coords)

    def block_slots(self, i: int) -> list[_Slot]:
        return [s for s in self.slots if s.block == i]

    def sylow_indices(self, i: int) -> np.ndarray:
        """Indices of ``A_i``: only block ``i`` of T and coordinate ``i`` of S are free."""
        blk = self.blocks[i]
        rank = self.params.sylow_rank(i)
        size = blk.modulus.value**rank
        if size > INDEX_LIMIT or size > 10**8:
            raise SizeGuardError(f"A_{i + 1} has {size} elements")
        free = trivial_abelian([blk.modulus.value] * rank).coords.decode(np.arange(size, dtype=np.int64))
        return self._place(i, free)

    def _place(self, i: int, vectors: np.ndarray) -> np.ndarray:
        vectors = np.asarray(vectors, dtype=np.int64)
        t = np.zeros(vectors.shape[:-1] + (len(self.T.coords.radices),), dtype=np.int64)
        s = np.zeros(vectors.shape[:-1] + (self.params.m,), dtype=np.int64)
        k = 0
        for slot in self.block_slots(i):
            t[..., slot.start:slot.start + slot.dim] = vectors[..., k:k + slot.dim]
            k += slot.dim
        s[..., i] = vectors[..., k]
        return self.join(t, s)

    def sylow_block(self, i: int) -> np.ndarray:
        mask = np.zeros(self.brace.size, dtype=bool)
        mask[self.sylow_indices(i)] = True
        return mask

    def phi_sylow(self, i: int) -> SylowIsomorphism:
        return SylowIsomorphism(self, i)

    # independent reference arithmetic ----------------------------------------

    def reference_element(self, x: int) -> tuple[list[list[RowVector]], list[int]]:
        t, s = self.split(int(x))
        vecs = []
        for i, blk in enumerate(self.blocks):
            vecs.append([RowVector(tuple(int(c) for c in t[sl.start:sl.start + sl.dim]), blk.modulus)
                         for sl in self.block_slots(i)])
        return vecs, [int(a) for a in s]

    def reference_index(self, vecs: list[list[RowVector]], a: Sequence[int]) -> int:
        t = np.zeros(len(self.T.coords.radices), dtype=np.int64)
        for i in range(self.params.m):
            for sl, v in zip(self.block_slots(i), vecs[i]):
                t[sl.start:sl.start + sl.dim] = v.entries
        return int(self.join(t, np.asarray(a, dtype=np.int64)))

    def reference_add(self, x: int, y: int) -> int:
        """Addition written directly with residue objects: ``(u+v, a+c+Σ u J vᵗ)``."""
        (u, a), (v, c) = self.reference_element(x), self.reference_element(y)
        out_a = []
        for i, blk in enumerate(self.blocks):
            twist = sum(int(blk.J.bilinear(uj, vj)) for uj, vj in zip(u[i], v[i]))
            out_a.append((a[i] + c[i] + twist) % blk.modulus.value)
        return self.reference_index([[uj + vj for uj, vj in zip(u[i], v[i])] for i in range(self.params.m)], out_a)

    def reference_mul(self, x: int, y: int) -> int:
        """Semidirect multiplication ``(u + α_a(v), a + c)`` with matrix powers ``F_i^(a_{i-1})``."""
        (u, a), (v, c) = self.reference_element(x), self.reference_element(y)
        vecs = []
        for i, blk in enumerate(self.blocks):
            P = blk.F ** a[self.params.prev(i)]
            vecs.append([uj + (vj @ P) for uj, vj in zip(u[i], v[i])])
        return self.reference_index(vecs, [(a[i] + c[i]) % b.modulus.value for i, b in enumerate(self.blocks)])


def build_family(params: FamilyParams, max_order: int | None = DEFAULT_MAX_ORDER, *,
                 check: bool = False, seed: int = DEFAULT_SEED) -> Family:
    """Construct the brace for ``params``; refuses orders above ``max_order`` (None disables the guard)."""
    order = brace_order(params)
    if max_order is not None and order > max_order:
        raise SizeGuardError(f"brace order {order} exceeds the size guard {max_order}")
    if order >= INDEX_LIMIT:
        raise SizeGuardError(f"brace order {order} does not fit 64-bit indices")
    return Family(params, check=check, seed=seed)


class SylowIsomorphism:
    """``φ: A_i → (Z/p_i^n_i)^(2 s_i l_{i-1} + 1)``: T-coordinates forwarded,
    last coordinate ``a_i − Σ_j Σ_{k<l} u_{j,k} u_{j,k+l}``."""

    def __init__(self, family: Family, i: int):
        self.family = family
        self.i = i
        self.q = family.blocks[i].modulus.value
        self.rank = family.params.sylow_rank(i)

    def _quadratic(self, t: np.ndarray) -> np.ndarray:
        acc = np.zeros(t.shape[:-1], dtype=np.int64)
        for sl in self.family.block_slots(self.i):
            l = sl.dim // 2
            for c in range(sl.start, sl.start + l):
                acc = (acc + t[..., c] * t[..., c + l]) % self.q
        return acc

    def forward(self, x) -> np.ndarray:
        t, s = self.family.split(x)
        parts = [t[..., sl.start:sl.start + sl.dim] for sl in self.family.block_slots(self.i)]
        last = (s[..., self.i] - self._quadratic(t)) % self.q
        return np.concatenate(parts + [last[..., None]], axis=-1)

    def backward(self, vectors) -> np.ndarray:
        vectors = np.asarray(vectors, dtype=np.int64) % self.q
        x = self.family._place(self.i, vectors)
        t, s = self.family.split(x)
        s[..., self.i] = (s[..., self.i] + self._quadratic(t)) % self.q
        return self.family.join(t, s)

    def verify(self, samples: int = 1_000_000, seed: int = DEFAULT_SEED) -> CheckReport:
        """Bijective onto the target and additive on all pairs (sampled above ``SYLOW_PAIR_LIMIT`` pairs)."""
        B = self.family.brace
        A = self.family.sylow_indices(self.i)
        images = self.forward(A)
        flat = trivial_abelian([self.q] * self.rank).coords.encode(images)
        name = f"phi_sylow {self.i + 1}"
        if np.unique(flat).size != self.q**self.rank or not np.array_equal(self.backward(images), A):
            return CheckReport(name, FAIL, len(A), detail="not a bijection")
        n = len(A)
        if n * n <= SYLOW_PAIR_LIMIT:
            checked = 0
            for k, x in enumerate(A):
                lhs = self.forward(B.add(x, A))
                rhs = (images[k] + images) % self.q
                bad = np.flatnonzero(np.any(lhs != rhs, axis=1))
                if bad.size:
                    return CheckReport(name, FAIL, checked + int(bad[0]) + 1, (int(x), int(A[bad[0]])))
                checked += n
            return CheckReport(name, PASS, checked)
        rng = np.random.default_rng(seed)
        u, v = rng.integers(0, n, size=(2, samples))
        bad = np.flatnonzero(np.any(self.forward(B.add(A[u], A[v])) != (images[u] + images[v]) % self.q, axis=1))
        if bad.size:
            return CheckReport(name, FAIL, int(bad[0]) + 1, (int(A[u[bad[0]]]), int(A[v[bad[0]]])), seed)
        return CheckReport(name, NO_COUNTEREXAMPLE, samples, seed=seed)


def verify_semidirect(family: Family, samples: int = 2_000, seed: int = DEFAULT_SEED) -> CheckReport:
    """Compare the brace operations with the residue-object reference on seeded pairs."""
    rng = np.random.default_rng(seed)
    B = family.brace
    xs, ys = rng.integers(0, B.size, size=(2, samples))
    for x, y in zip(xs, ys):
        x, y = int(x), int(y)
        if int(B.mul(x, y)) != family.reference_mul(x, y) or int(B.add(x, y)) != family.reference_add(x, y):
            return CheckReport("semidirect product", FAIL, samples, (x, y), seed)
    return CheckReport("semidirect product", NO_COUNTEREXAMPLE, samples, seed=seed)


# ---------------------------------------------------------------------------
# embedding synthesis


def parse_cyclic_factors(orders: Sequence[int]) -> list[tuple[int, int]]:
    """``[8, 2, 5] -> [(2, 3), (2, 1), (5, 1)]``; every order must be a prime power > 1."""
    out = []
    for k in orders:
        k = int(k)
        f = factorize(k) if k > 1 else {}
        if len(f) != 1:
            raise ParamsError(f"{k} is not a prime power; factor it into prime-power cyclic factors")
        ((p, e),) = f.items()
        out.append((p, e))
    if not out:
        raise ParamsError("target group must have at least one cyclic factor")
    return out


@dataclass
class EmbeddingPlan:
    """Parameters plus, per target factor ``Z/p^k``, the block, the Sylow coordinate and the
    multiplier ``p^(n-k)`` of the image of its generator."""

    factors: list[tuple[int, int]]
    params: FamilyParams
    assignment: list[tuple[int, int, int]] = field(default_factory=list)

    def generator_vectors(self) -> list[tuple[int, np.ndarray]]:
        out = []
        for block, coord, mult in self.assignment:
            vec = np.zeros(self.params.sylow_rank(block), dtype=np.int64)
            vec[coord] = mult
            out.append((block, vec))
        return out

    def images(self, family: Family) -> np.ndarray:
        return np.array([int(family.phi_sylow(i).backward(v)) for i, v in self.generator_vectors()],
                        dtype=np.int64)

    def as_dict(self) -> dict:
        return {
            "target": [p**k for p, k in self.factors],
            "params": self.params.to_dict(),
            "order": brace_order(self.params),
            "assignment": [
                {"factor": p**k, "block": b + 1, "coordinate": c, "multiplier": mult}
                for (p, k), (b, c, mult) in zip(self.factors, self.assignment)
            ],
        }


def synthesize_embedding(target: Sequence[int]) -> EmbeddingPlan:
    """Choose parameters whose brace contains ``⊕ Z/(target_j)`` additively.

    Primes are those of the target (plus 2, else 3, when only one occurs),
    ``n_i`` is the largest exponent of ``p_i`` in the target, and ``s_i`` is
    minimal with ``2 s_i l_{i-1} + 1 >= #factors at p_i``.
    """
    factors = parse_cyclic_factors(target)
    by_prime: dict[int, list[int]] = {}
    for p, k in factors:
        by_prime.setdefault(p, []).append(k)
    primes = sorted(by_prime)
    if len(primes) < 2:
        extra = next(q for q in (2, 3) if q not in by_prime)
        primes = sorted(primes + [extra])
    exponents = [max(by_prime.get(p, [1])) for p in primes]
    lengths = [p**n - p ** (n - 1) for p, n in zip(primes, exponents)]
    mults = []
    for i, p in enumerate(primes):
        need = len(by_prime.get(p, []))
        l_prev = lengths[(i - 1) % len(primes)]
        mults.append(max(1, math.ceil((need - 1) / (2 * l_prev))))
    params = FamilyParams(primes, exponents, mults)
    used = {p: 0 for p in primes}
    assignment = []
    for p, k in factors:
        i = primes.index(p)
        assignment.append((i, used[p], p ** (exponents[i] - k)))
        used[p] += 1
    return EmbeddingPlan(factors, params, assignment)


def verify_embedding(plan: EmbeddingPlan, family: Family | None = None, *, limit: int = 10**6) -> CheckReport:
    """The generator images have the right additive orders and span a subgroup of order ``|A|``.

    Only the spanned subgroup is enumerated, so this works above the size guard.
    """
    if family is None:
        family = build_family(plan.params, max_order=None)
    B = family.brace
    target_order = math.prod(p**k for p, k in plan.factors)
    if target_order > limit:
        raise SizeGuardError(f"target group of order {target_order} is too large to enumerate")
    images = plan.images(family)
    span = np.zeros(1, dtype=np.int64)
    for (p, k), g in zip(plan.factors, images):
        acc, order = np.int64(g), 1
        while acc != 0:
            acc = np.int64(B.add(acc, g))
            order += 1
        if order != p**k:
            return CheckReport("embedding", FAIL, 0, (int(g),), detail=f"image of Z/{p**k} has order {order}")
        shifts = [np.int64(0)]
        for _ in range(order - 1):
            shifts.append(np.int64(B.add(shifts[-1], g)))
        span = np.unique(B.add(span[:, None], np.asarray(shifts)[None, :]).ravel())
    status = PASS if span.size == target_order else FAIL
    return CheckReport("embedding", status, int(span.size),
                       detail=f"image subgroup of order {span.size}, target order {target_order}")
