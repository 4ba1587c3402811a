"""The involutive set-theoretic Yang-Baxter solution of a finite left brace.

``r(x, y) = (σ_x(y), ρ_y(x))`` with ``σ_x(y) = λ_x(y)`` and
``ρ_y(x) = λ_x(y)⁻¹·x·y``, so that ``σ_x(y)·ρ_y(x) = x·y``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .brace import (
    DEFAULT_SEED,
    DEFAULT_TRIPLES,
    FAIL,
    NO_COUNTEREXAMPLE,
    PASS,
    TABLE_LIMIT,
    CheckReport,
    FiniteBrace,
    SizeGuardError,
    _pair_chunks,
    _sampled,
)

INVOLUTIVE_EXHAUSTIVE_LIMIT = 2000


@dataclass
class SolutionMap:
    """``sigma[x, y] = σ_x(y)`` and ``rho[y, x] = ρ_y(x)`` as ``N×N`` index tables.

    A solution of a brace too large to tabulate keeps ``brace`` instead and
    evaluates ``r`` on demand.
    """

    sigma: np.ndarray | None
    rho: np.ndarray | None
    provenance: dict = field(default_factory=dict)
    brace: FiniteBrace | None = None

    @property
    def size(self) -> int:
        return len(self.sigma) if self.sigma is not None else self.brace.size

    @property
    def materialized(self) -> bool:
        return self.sigma is not None

    def __call__(self, x, y):
        x, y = np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)
        if self.materialized:
            return self.sigma[x, y], self.rho[y, x]
        B = self.brace
        s = np.asarray(B.lam(x, y), dtype=np.int64)
        return s, np.asarray(B.mul(B.inv(s), B.mul(x, y)), dtype=np.int64)

    def sigma_row(self, x: int) -> np.ndarray:
        if self.materialized:
            return self.sigma[x]
        return self(np.full(self.size, x), np.arange(self.size))[0]

    def rho_row(self, y: int) -> np.ndarray:
        if self.materialized:
            return self.rho[y]
        return self(np.arange(self.size), np.full(self.size, y))[1]

    @classmethod
    def flip(cls, n: int) -> SolutionMap:
        ident = np.broadcast_to(np.arange(n), (n, n)).copy()
        return cls(ident, ident.copy())

    def is_flip(self) -> bool:
        ident = np.arange(self.size)[None, :]
        return bool(np.all(self.sigma == ident) and np.all(self.rho == ident))

    def to_json(self) -> str:
        if not self.materialized:
            raise SizeGuardError("only tabulated solutions can be exported")
        payload = {
            "size": self.size,
            "sigma": self.sigma.tolist(),
            "rho": self.rho.tolist(),
            "provenance": self.provenance,
        }
        return json.dumps(payload, separators=(",", ":"), sort_keys=False)

    def save(self, path: str | Path):
        Path(path).write_text(self.to_json())

    @classmethod
    def from_json(cls, text: str) -> SolutionMap:
        data = json.loads(text)
        sigma = np.asarray(data["sigma"], dtype=np.int64)
        rho = np.asarray(data["rho"], dtype=np.int64)
        n = int(data["size"])
        if sigma.shape != (n, n) or rho.shape != (n, n):
            raise ValueError("sigma/rho must be size x size arrays")
        return cls(sigma, rho, data.get("provenance", {}))

    @classmethod
    def load(cls, path: str | Path) -> SolutionMap:
        return cls.from_json(Path(path).read_text())


def solution_from_brace(B: FiniteBrace, limit: int = TABLE_LIMIT, *, lazy: bool = False) -> SolutionMap:
    """Tabulated solution of ``B``; above ``limit`` points either raise or, with ``lazy``, evaluate on demand."""
    if B.size > limit:
        if lazy:
            return SolutionMap(None, None, {"brace": B.name, "size": B.size}, brace=B)
        raise SizeGuardError(f"solution tables for {B.size} points exceed the limit {limit}")
    x = np.arange(B.size, dtype=np.int64)
    sigma = np.asarray(B.lam(x[:, None], x[None, :]), dtype=np.int64)
    # rho_by_x[x, y] = σ_x(y)⁻¹ · (x·y)
    rho_by_x = np.asarray(B.mul(B.inv(sigma), B.mul(x[:, None], x[None, :])), dtype=np.int64)
    return SolutionMap(sigma, np.ascontiguousarray(rho_by_x.T), {"brace": B.name, "size": B.size})


def _is_perm_rows(M: np.ndarray) -> np.ndarray:
    return np.all(np.sort(M, axis=1) == np.arange(M.shape[1])[None, :], axis=1)


def check_nondegenerate(r: SolutionMap, rows: int = 64, seed: int = DEFAULT_SEED) -> CheckReport:
    """Every ``σ_x`` and every ``ρ_y`` is a permutation (``rows`` seeded rows of each for lazy solutions)."""
    if not r.materialized:
        picks = np.random.default_rng(seed).integers(0, r.size, size=rows)
        for name, row in (("sigma", r.sigma_row), ("rho", r.rho_row)):
            for x in picks:
                if np.unique(row(int(x))).size != r.size:
                    return CheckReport("non-degenerate", FAIL, 0, (int(x),), seed,
                                       f"{name}_{int(x)} is not a bijection")
        return CheckReport("non-degenerate", NO_COUNTEREXAMPLE, 2 * rows, seed=seed)
    for name, table in (("sigma", r.sigma), ("rho", r.rho)):
        bad = np.flatnonzero(~_is_perm_rows(table))
        if bad.size:
            return CheckReport("non-degenerate", FAIL, 2 * r.size, (int(bad[0]),),
                               detail=f"{name}_{int(bad[0])} is not a bijection")
    return CheckReport("non-degenerate", PASS, 2 * r.size)


def check_involutive(r: SolutionMap, samples: int = DEFAULT_TRIPLES, seed: int = DEFAULT_SEED,
                     exhaustive_limit: int = INVOLUTIVE_EXHAUSTIVE_LIMIT) -> CheckReport:
    """``r(r(x, y)) = (x, y)``; all pairs when ``N <= exhaustive_limit``."""
    exhaustive = r.size <= exhaustive_limit
    chunks = _pair_chunks(r.size) if exhaustive else _sampled(r.size, samples, 2, seed)
    checked = 0
    for x, y in chunks:
        u, v = r(x, y)
        a, b = r(u, v)
        ok = (a == x) & (b == y)
        if not ok.all():
            k = int(np.argmin(ok))
            return CheckReport("involutive", FAIL, checked + k + 1, (int(x[k]), int(y[k])),
                               None if exhaustive else seed)
        checked += len(x)
    return CheckReport("involutive", PASS if exhaustive else NO_COUNTEREXAMPLE, checked, None,
                       None if exhaustive else seed)


def _braid_sides(r: SolutionMap, x, y, z):
    # (r×id)(id×r)(r×id)
    a, b = r(x, y)
    b, c = r(b, z)
    a, b = r(a, b)
    left = (a, b, c)
    # (id×r)(r×id)(id×r)
    b2, c2 = r(y, z)
    a2, b2 = r(x, b2)
    b2, c2 = r(b2, c2)
    return left, (a2, b2, c2)


def check_ybe(r: SolutionMap, samples: int | None = DEFAULT_TRIPLES, seed: int = DEFAULT_SEED) -> CheckReport:
    """Braid relation on ``samples`` seeded triples, or on all of ``X³`` when ``samples`` is None."""
    if samples is None:
        n = r.size

        def chunks():
            for x in range(n):
                for y, z in _pair_chunks(n):
                    yield np.full_like(y, x), y, z
        source = chunks()
    else:
        source = _sampled(r.size, samples, 3, seed)
    checked = 0
    for x, y, z in source:
        left, right = _braid_sides(r, x, y, z)
        ok = (left[0] == right[0]) & (left[1] == right[1]) & (left[2] == right[2])
        if not ok.all():
            k = int(np.argmin(ok))
            return CheckReport("braid relation", FAIL, checked + k + 1, (int(x[k]), int(y[k]), int(z[k])),
                               seed if samples is not None else None)
        checked += len(x)
    return CheckReport("braid relation", PASS if samples is None else NO_COUNTEREXAMPLE, checked,
                       seed=None if samples is None else seed)
