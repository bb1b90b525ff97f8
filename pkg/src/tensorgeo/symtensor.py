"""Symmetric tensors over R^n, stored as homogeneous polynomial coefficients.

A symmetric rank-p tensor T is identified with the degree-p polynomial
y -> T(y, ..., y) = sum_beta coeffs[beta] * y^beta, where beta runs over
multi-degrees of total degree p in n variables.  The symmetric tensor
product is then plain polynomial multiplication, and the tensor coordinate
T(e^beta) (T applied to basis vectors with multiplicities beta) is
coeffs[beta] / multinomial(p; beta).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SymTensor",
    "metric_tensor",
    "subspace_metric_tensor",
    "vector_power",
    "multi_degrees",
    "multinomial",
]


def multinomial(p, beta):
    """p! / prod(beta_i!) for a multi-degree beta with |beta| = p."""
    out = math.factorial(p)
    for b in beta:
        out //= math.factorial(b)
    return out


def multi_degrees(dim, rank):
    """All multi-degrees beta over `dim` variables with |beta| = rank,
    in lexicographic order."""
    if dim == 0:
        return [()] if rank == 0 else []
    out = []
    for head in range(rank, -1, -1):
        for tail in multi_degrees(dim - 1, rank - head):
            out.append((head,) + tail)
    return out


@dataclass(frozen=True)
class SymTensor:
    """Immutable symmetric tensor; `coeffs` maps multi-degree -> polynomial
    coefficient.  Zero coefficients may be omitted."""

    dim: int
    rank: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        for beta, c in self.coeffs.items():
            if len(beta) != self.dim or sum(beta) != self.rank:
                raise ValueError(f"bad multi-degree {beta} for dim={self.dim} rank={self.rank}")

    @staticmethod
    def zero(dim, rank):
        return SymTensor(dim, rank, {})

    @staticmethod
    def scalar(dim, value):
        if value == 0:
            return SymTensor(dim, 0, {})
        return SymTensor(dim, 0, {(0,) * dim: float(value)})

    @staticmethod
    def from_coordinates(dim, rank, coords):
        """Build a tensor from a map multi-degree -> tensor coordinate."""
        return SymTensor(
            dim, rank,
            {beta: multinomial(rank, beta) * float(v) for beta, v in coords.items() if v != 0},
        )

    def coordinate(self, beta):
        """Tensor coordinate T(e^beta) = coeffs[beta] / multinomial."""
        beta = tuple(beta)
        if len(beta) != self.dim or sum(beta) != self.rank:
            raise ValueError(f"bad multi-degree {beta}")
        return self.coeffs.get(beta, 0.0) / multinomial(self.rank, beta)

    def coordinates_array(self):
        """Tensor coordinates over all multi-degrees, in lexicographic order."""
        return np.array([self.coordinate(b) for b in multi_degrees(self.dim, self.rank)])

    def value(self):
        """Scalar value of a rank-0 tensor."""
        if self.rank != 0:
            raise ValueError("value() requires rank 0")
        return self.coeffs.get((0,) * self.dim, 0.0)

    def __call__(self, y):
        """Evaluate the polynomial at y, i.e. T(y, ..., y)."""
        y = np.asarray(y, dtype=float)
        total = 0.0
        for beta, c in self.coeffs.items():
            total += c * np.prod(y ** np.array(beta))
        return total

    # -- algebra ---------------------------------------------------------

    def add_scaled(self, other, a=1.0):
        """self + a * other (equal dim and rank required)."""
        if other.dim != self.dim or other.rank != self.rank:
            raise ValueError("dim/rank mismatch in add_scaled")
        out = dict(self.coeffs)
        for beta, c in other.coeffs.items():
            out[beta] = out.get(beta, 0.0) + a * c
        return SymTensor(self.dim, self.rank, {b: c for b, c in out.items() if c != 0.0})

    def __add__(self, other):
        return self.add_scaled(other, 1.0)

    def __sub__(self, other):
        return self.add_scaled(other, -1.0)

    def scale(self, a):
        return SymTensor(self.dim, self.rank, {b: a * c for b, c in self.coeffs.items()})

    def __mul__(self, other):
        """Symmetric tensor product = polynomial product."""
        if isinstance(other, (int, float)):
            return self.scale(float(other))
        if other.dim != self.dim:
            raise ValueError("dimension mismatch in sym_product")
        out = {}
        for b1, c1 in self.coeffs.items():
            for b2, c2 in other.coeffs.items():
                b = tuple(x + y for x, y in zip(b1, b2))
                out[b] = out.get(b, 0.0) + c1 * c2
        return SymTensor(self.dim, self.rank + other.rank, {b: c for b, c in out.items() if c != 0.0})

    __rmul__ = __mul__

    def power(self, q):
        """q-fold symmetric tensor product of self."""
        if q < 0 or int(q) != q:
            raise ValueError("power requires a nonnegative integer")
        out = SymTensor.scalar(self.dim, 1.0)
        for _ in range(int(q)):
            out = out * self
        return out

    def rotate(self, rho):
        """Push forward by a rotation rho: the result has polynomial
        y -> T(rho^T y), matching coordinate-wise rotation of the tensor."""
        rho = np.asarray(rho, dtype=float)
        out = SymTensor.zero(self.dim, self.rank)
        for beta, c in self.coeffs.items():
            term = SymTensor.scalar(self.dim, c)
            for i, b in enumerate(beta):
                if b:
                    term = term * vector_power(rho[:, i], b)
            out = out + term
        return out

    def max_abs_coordinate_diff(self, other):
        """Infinity norm of self - other over tensor coordinates."""
        if other.dim != self.dim or other.rank != self.rank:
            raise ValueError("dim/rank mismatch")
        diff = 0.0
        for beta in set(self.coeffs) | set(other.coeffs):
            d = (self.coeffs.get(beta, 0.0) - other.coeffs.get(beta, 0.0)) / multinomial(self.rank, beta)
            diff = max(diff, abs(d))
        return diff

    # -- serialization ---------------------------------------------------

    def to_json(self):
        entries = sorted((list(b), c) for b, c in self.coeffs.items() if c != 0.0)
        return {"dim": self.dim, "rank": self.rank, "entries": [[b, c] for b, c in entries]}

    @staticmethod
    def from_json(obj):
        return SymTensor(
            int(obj["dim"]), int(obj["rank"]),
            {tuple(int(x) for x in b): float(c) for b, c in obj["entries"]},
        )


def metric_tensor(n):
    """The metric tensor Q of R^n, polynomial |y|^2."""
    return SymTensor(n, 2, {tuple(2 if i == j else 0 for j in range(n)): 1.0 for i in range(n)})


def subspace_metric_tensor(basis):
    """Q(L) for the subspace L spanned by the orthonormal columns of `basis`:
    polynomial |p_L y|^2 = sum_i <b_i, y>^2.  Empty basis gives the zero
    rank-2 tensor."""
    basis = np.asarray(basis, dtype=float)
    if basis.ndim != 2:
        raise ValueError("basis must be an n x d matrix")
    n, d = basis.shape
    if d and np.max(np.abs(basis.T @ basis - np.eye(d))) > 1e-10:
        raise ValueError("basis columns are not orthonormal")
    out = SymTensor.zero(n, 2)
    for i in range(d):
        out = out + vector_power(basis[:, i], 2)
    return out


def vector_power(x, r):
    """The rank-r tensor x^r, polynomial <x, y>^r."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    if r < 0 or int(r) != r:
        raise ValueError("r must be a nonnegative integer")
    r = int(r)
    if r == 0:
        return SymTensor.scalar(n, 1.0)
    if not np.any(x):
        return SymTensor.zero(n, r)
    coeffs = {}
    for beta in itertools.product(*(range(r + 1) for _ in range(n))):
        if sum(beta) != r:
            continue
        c = multinomial(r, beta) * np.prod(x ** np.array(beta))
        if c != 0.0:
            coeffs[beta] = float(c)
    return SymTensor(n, r, coeffs)
