"""Exact arithmetic over Z/(p^n): residues, polynomials, row vectors and square matrices.

Vectors are rows and matrices act on the right (``v @ M``).  Entries are stored
as reduced Python ints so products never overflow; every container carries its
:class:`Modulus`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_MODULUS = 2**31


class ResidueError(ValueError):
    pass


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


def factorize(k: int) -> dict[int, int]:
    """Trial-division factorization ``{prime: exponent}``."""
    if k < 1:
        raise ResidueError(f"cannot factor {k}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= k:
        while k % d == 0:
            out[d] = out.get(d, 0) + 1
            k //= d
        d += 1
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


@dataclass(frozen=True)
class Modulus:
    p: int
    n: int
    value: int = field(init=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ResidueError(f"{self.p} is not prime")
        if self.n < 1:
            raise ResidueError(f"exponent must be positive, got {self.n}")
        value = self.p**self.n
        if value >= MAX_MODULUS:
            raise ResidueError(f"{self.p}^{self.n} does not fit the machine-word guard")
        object.__setattr__(self, "value", value)

    def is_unit(self, a: int) -> bool:
        return a % self.p != 0

    def inverse(self, a: int) -> int:
        if not self.is_unit(a):
            raise ResidueError(f"{a} is not a unit mod {self.value}")
        return pow(a, -1, self.value)

    def __str__(self):
        return f"Z/{self.value}"


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: Modulus

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus.value)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ResidueError("mixed moduli")
            return other.value
        return int(other)

    def __add__(self, other):
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return Residue(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, k: int):
        if k < 0:
            return Residue(pow(self.inverse().value, -k, self.modulus.value), self.modulus)
        return Residue(pow(self.value, k, self.modulus.value), self.modulus)

    def inverse(self) -> Residue:
        return Residue(self.modulus.inverse(self.value), self.modulus)

    def is_unit(self) -> bool:
        return self.modulus.is_unit(self.value)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus.value})"


@dataclass(frozen=True)
class Poly:
    """Polynomial with coefficients lowest degree first, trailing zeros trimmed."""

    coefficients: tuple[int, ...]
    modulus: Modulus

    def __post_init__(self):
        coeffs = [c % self.modulus.value for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def __getitem__(self, k: int) -> Residue:
        c = self.coefficients[k] if k < len(self.coefficients) else 0
        return Residue(c, self.modulus)

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        return Poly(
            tuple((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(size)),
            self.modulus,
        )

    def __sub__(self, other: Poly) -> Poly:
        return self + Poly(tuple(-c for c in other.coefficients), self.modulus)

    def __mul__(self, other: Poly) -> Poly:
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Poly((), self.modulus)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(tuple(out), self.modulus)

    @classmethod
    def monomial(cls, degree: int, modulus: Modulus, coefficient: int = 1) -> Poly:
        return cls((0,) * degree + (coefficient,), modulus)

    def evaluate(self, M: SquareMatrix) -> SquareMatrix:
        """Horner evaluation at a square matrix."""
        result = SquareMatrix.zeros(M.size, M.modulus)
        ident = SquareMatrix.identity(M.size, M.modulus)
        for c in reversed(self.coefficients):
            result = result @ M + ident.scale(c)
        return result

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(reversed(terms)) or "0"


@dataclass(frozen=True)
class RowVector:
    entries: tuple[int, ...]
    modulus: Modulus

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(e % self.modulus.value for e in self.entries))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return Residue(self.entries[k], self.modulus)

    def __add__(self, other: RowVector) -> RowVector:
        return RowVector(tuple(a + b for a, b in zip(self.entries, other.entries, strict=True)), self.modulus)

    def __sub__(self, other: RowVector) -> RowVector:
        return RowVector(tuple(a - b for a, b in zip(self.entries, other.entries, strict=True)), self.modulus)

    def __matmul__(self, M: SquareMatrix) -> RowVector:
        if M.size != len(self.entries):
            raise ResidueError("dimension mismatch")
        cols = range(M.size)
        return RowVector(
            tuple(sum(self.entries[i] * M.rows[i][j] for i in cols) for j in cols), self.modulus
        )

    def is_zero(self) -> bool:
        return not any(self.entries)


@dataclass(frozen=True)
class SquareMatrix:
    rows: tuple[tuple[int, ...], ...]
    modulus: Modulus

    def __post_init__(self):
        size = len(self.rows)
        if any(len(r) != size for r in self.rows):
            raise ResidueError("matrix is not square")
        q = self.modulus.value
        object.__setattr__(self, "rows", tuple(tuple(e % q for e in r) for r in self.rows))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], modulus: Modulus) -> SquareMatrix:
        return cls(tuple(tuple(r) for r in rows), modulus)

    @classmethod
    def zeros(cls, d: int, modulus: Modulus) -> SquareMatrix:
        return cls(tuple((0,) * d for _ in range(d)), modulus)

    @classmethod
    def identity(cls, d: int, modulus: Modulus) -> SquareMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), modulus)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[SquareMatrix]]) -> SquareMatrix:
        """Assemble a square block matrix from a square grid of equal-size blocks."""
        modulus = blocks[0][0].modulus
        rows = []
        for block_row in blocks:
            for r in range(block_row[0].size):
                rows.append(sum((b.rows[r] for b in block_row), ()))
        return cls(tuple(rows), modulus)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Residue:
        i, j = ij
        return Residue(self.rows[i][j], self.modulus)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.modulus == other.modulus and self.rows == other.rows

    def __hash__(self):
        return hash((self.rows, self.modulus))

    def __add__(self, other: SquareMatrix) -> SquareMatrix:
        return SquareMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.modulus
        )

    def __sub__(self, other: SquareMatrix) -> SquareMatrix:
        return SquareMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.modulus
        )

    def scale(self, c: int) -> SquareMatrix:
        return SquareMatrix(tuple(tuple(c * a for a in r) for r in self.rows), self.modulus)

    def __matmul__(self, other: SquareMatrix) -> SquareMatrix:
        if other.size != self.size or other.modulus != self.modulus:
            raise ResidueError("incompatible matrices")
        cols = list(zip(*other.rows))
        return SquareMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows), self.modulus
        )

    def transpose(self) -> SquareMatrix:
        return SquareMatrix(tuple(zip(*self.rows)), self.modulus)

    def __pow__(self, k: int) -> SquareMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        result = SquareMatrix.identity(self.size, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> SquareMatrix:
        """Gauss-Jordan elimination with unit pivots.

        Over the local ring Z/(p^n) a matrix is invertible iff it is invertible
        mod p, and then every column has a unit pivot below the diagonal.
        """
        q = self.modulus.value
        d = self.size
        aug = [list(r) + [int(i == j) for j in range(d)] for i, r in enumerate(self.rows)]
        for col in range(d):
            pivot = next((r for r in range(col, d) if self.modulus.is_unit(aug[r][col])), None)
            if pivot is None:
                raise ResidueError("matrix is not invertible")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = self.modulus.inverse(aug[col][col])
            aug[col] = [(x * inv) % q for x in aug[col]]
            for r in range(d):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [(x - f * y) % q for x, y in zip(aug[r], aug[col])]
        return SquareMatrix(tuple(tuple(r[d:]) for r in aug), self.modulus)

    def is_invertible(self) -> bool:
        try:
            self.inverse()
        except ResidueError:
            return False
        return True

    def is_identity(self) -> bool:
        return all(e == int(i == j) for i, r in enumerate(self.rows) for j, e in enumerate(r))

    def bilinear(self, u: RowVector, v: RowVector) -> Residue:
        """``u · M · vᵗ``."""
        w = u @ self
        return Residue(sum(a * b for a, b in zip(w.entries, v.entries, strict=True)), self.modulus)


def q_poly(p: int, n: int, target: Modulus) -> Poly:
    """``sum_{k<p} x^(k p^(n-1))`` with coefficients in ``target``."""
    if not is_prime(p) or n < 1:
        raise ResidueError(f"bad prime power {p}^{n}")
    step = p ** (n - 1)
    coeffs = [0] * ((p - 1) * step + 1)
    for k in range(p):
        coeffs[k * step] = 1
    return Poly(tuple(coeffs), target)


def companion(poly: Poly) -> SquareMatrix:
    """Companion matrix: ones on the subdiagonal, negated coefficients in the last column."""
    if poly.degree < 1 or not poly.is_monic():
        raise ResidueError("companion matrix needs a monic polynomial of degree >= 1")
    d = poly.degree
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -poly.coefficients[i]
    return SquareMatrix.from_rows(rows, poly.modulus)


def matrix_order(M: SquareMatrix, cap: int = 1 << 20) -> int:
    if not M.is_invertible():
        raise ResidueError("order is only defined for invertible matrices")
    P = M
    for k in range(1, cap + 1):
        if P.is_identity():
            return k
        P = P @ M
    raise RuntimeError(f"matrix order exceeds cap {cap}")


def hyperbolic_form(l: int, modulus: Modulus) -> SquareMatrix:
    d = 2 * l
    return SquareMatrix(tuple(tuple(int(abs(i - j) == l) for j in range(d)) for i in range(d)), modulus)


def f_matrix(C: SquareMatrix) -> SquareMatrix:
    """Block-diagonal ``diag(Cᵗ, C⁻¹)``; orthogonal for :func:`hyperbolic_form`."""
    Cinv = C.inverse()
    Z = SquareMatrix.zeros(C.size, C.modulus)
    return SquareMatrix.block([[C.transpose(), Z], [Z, Cinv]])
