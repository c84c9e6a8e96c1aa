"""Legendre reference functions with full domain.

Every family evaluates its value, gradient and Bregman distance on arrays
of shape ``(..., dim)``.  The module-level functions :func:`evaluate`,
:func:`gradient` and :func:`bregman` add dimension checking and accept a
bare scalar for one-dimensional functions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

ArrayLike = Union[float, Sequence[float], np.ndarray]


class DimensionMismatch(ValueError):
    pass


def _abspow(x, p):
    # |x|^p with exact zero at the origin
    return np.abs(x) ** p


def _check_exponent(p):
    p = float(p)
    if not np.isfinite(p) or p <= 1.0:
        raise ValueError(f"exponent must be a finite real > 1, got {p!r}")
    return p


def _check_positive(name, v):
    v = float(v)
    if not np.isfinite(v) or v <= 0.0:
        raise ValueError(f"{name} must be a finite positive real, got {v!r}")
    return v


def _check_dim(dim):
    if int(dim) != dim or dim < 1:
        raise ValueError(f"dim must be a positive integer, got {dim!r}")
    return int(dim)


class ReferenceFunction:
    """Base class of the catalog.  Subclasses are immutable."""

    dim: int

    def value(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def grad(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def divergence(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """D(x, y) = h(x) - h(y) - <grad h(y), x - y>, batched over leading axes."""
        return self.value(X) - self.value(Y) - np.sum(self.grad(Y) * (X - Y), axis=-1)

    def degree(self) -> Optional[float]:
        return None


@dataclass(frozen=True)
class PowerAbs(ReferenceFunction):
    """h(x) = coeff * |x|^p on the real line."""

    p: float
    coeff: float = 1.0
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        object.__setattr__(self, "p", _check_exponent(self.p))
        object.__setattr__(self, "coeff", _check_positive("coeff", self.coeff))

    def value(self, X):
        return self.coeff * _abspow(X[..., 0], self.p)

    def grad(self, X):
        return self.coeff * self.p * np.sign(X) * _abspow(X, self.p - 1.0)

    def degree(self):
        return self.p


@dataclass(frozen=True)
class TwoNormPower(ReferenceFunction):
    """h(x) = coeff * ||x||_2^p on R^dim."""

    p: float
    dim: int
    coeff: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "p", _check_exponent(self.p))
        object.__setattr__(self, "dim", _check_dim(self.dim))
        object.__setattr__(self, "coeff", _check_positive("coeff", self.coeff))

    def value(self, X):
        return self.coeff * np.linalg.norm(X, axis=-1) ** self.p

    def grad(self, X):
        r = np.linalg.norm(X, axis=-1, keepdims=True)
        safe = np.where(r > 0.0, r, 1.0)
        # limit value 0 at the origin, also for p in (1, 2)
        scale = np.where(r > 0.0, safe ** (self.p - 2.0), 0.0)
        return self.coeff * self.p * scale * X

    def degree(self):
        return self.p


@dataclass(frozen=True)
class PNormPower(ReferenceFunction):
    """h(x) = coeff * ||x||_p^p = coeff * sum_i |x_i|^p (separable)."""

    p: float
    dim: int
    coeff: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "p", _check_exponent(self.p))
        object.__setattr__(self, "dim", _check_dim(self.dim))
        object.__setattr__(self, "coeff", _check_positive("coeff", self.coeff))

    def value(self, X):
        return self.coeff * np.sum(_abspow(X, self.p), axis=-1)

    def grad(self, X):
        return self.coeff * self.p * np.sign(X) * _abspow(X, self.p - 1.0)

    def degree(self):
        return self.p


@dataclass(frozen=True, eq=False)
class QuadraticForm(ReferenceFunction):
    """h(x) = 1/2 <x, Qx> + <b, x> + c with Q symmetric positive definite."""

    Q: np.ndarray
    b: Optional[np.ndarray] = None
    c: float = 0.0
    dim: int = field(default=0, init=False)

    def __post_init__(self):
        Q = np.array(self.Q, dtype=float, ndmin=2)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
            raise ValueError(f"Q must be square, got shape {Q.shape}")
        if not np.allclose(Q, Q.T, rtol=1e-12, atol=0.0):
            raise ValueError("Q must be symmetric")
        try:
            np.linalg.cholesky(Q)
        except np.linalg.LinAlgError:
            raise ValueError("Q must be positive definite") from None
        n = Q.shape[0]
        b = np.zeros(n) if self.b is None else np.array(self.b, dtype=float).reshape(-1)
        if b.shape != (n,):
            raise DimensionMismatch(f"b has shape {b.shape}, expected ({n},)")
        Q.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "dim", n)

    def value(self, X):
        return 0.5 * np.einsum("...i,ij,...j->...", X, self.Q, X) + X @ self.b + self.c

    def grad(self, X):
        return X @ self.Q + self.b  # Q symmetric

    def divergence(self, X, Y):
        # closed form of the generic formula; avoids cancellation for nearby points
        d = X - Y
        return 0.5 * np.einsum("...i,ij,...j->...", d, self.Q, d)

    def degree(self):
        if not np.any(self.b) and self.c == 0.0:
            return 2.0
        return None


@dataclass(frozen=True)
class PiecewiseQuadratic1D(ReferenceFunction):
    """h(x) = a x^2 for x >= 0 and b x^2 otherwise."""

    a: float
    b: float
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        object.__setattr__(self, "a", _check_positive("a", self.a))
        object.__setattr__(self, "b", _check_positive("b", self.b))

    def _slope(self, X):
        return np.where(X >= 0.0, self.a, self.b)

    def value(self, X):
        x = X[..., 0]
        return self._slope(x) * x * x

    def grad(self, X):
        return 2.0 * self._slope(X) * X

    def degree(self):
        return 2.0


def _fold(weight, f):
    """Push a positive weight into a term; returns (weight, term) with weight folded when possible."""
    if isinstance(f, PowerAbs):
        return 1.0, PowerAbs(f.p, f.coeff * weight)
    if isinstance(f, (TwoNormPower, PNormPower)):
        return 1.0, type(f)(f.p, f.dim, f.coeff * weight)
    return weight, f


@dataclass(frozen=True, eq=False)
class ScaledSum(ReferenceFunction):
    """h = sum_i w_i h_i.  Nested sums are flattened and weights folded into
    ``coeff`` for the norm-power families."""

    terms: tuple
    dim: int = field(default=0, init=False)

    def __post_init__(self):
        flat = []

        def walk(w, f):
            if isinstance(f, ScaledSum):
                for wi, fi in f.terms:
                    walk(w * wi, fi)
            else:
                flat.append(_fold(w, f))

        if not self.terms:
            raise ValueError("ScaledSum needs at least one term")
        for w, f in self.terms:
            if not isinstance(f, ReferenceFunction):
                raise TypeError(f"not a reference function: {f!r}")
            walk(_check_positive("weight", w), f)
        dims = {f.dim for _, f in flat}
        if len(dims) != 1:
            raise DimensionMismatch(f"sum terms have different dimensions {sorted(dims)}")
        object.__setattr__(self, "terms", tuple(flat))
        object.__setattr__(self, "dim", dims.pop())

    def value(self, X):
        return sum(w * f.value(X) for w, f in self.terms)

    def grad(self, X):
        return sum(w * f.grad(X) for w, f in self.terms)

    def divergence(self, X, Y):
        return sum(w * f.divergence(X, Y) for w, f in self.terms)

    def degree(self):
        degs = {f.degree() for _, f in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None


@dataclass(frozen=True, eq=False)
class AffineImage(ReferenceFunction):
    """h_hat(x) = scale * inner(Lx - x0) + <b, x> + c with L nonsingular."""

    inner: ReferenceFunction
    L: Optional[np.ndarray] = None
    x0: Optional[np.ndarray] = None
    b: Optional[np.ndarray] = None
    c: float = 0.0
    scale: float = 1.0
    dim: int = field(default=0, init=False)

    def __post_init__(self):
        n = self.inner.dim
        L = np.eye(n) if self.L is None else np.array(self.L, dtype=float, ndmin=2)
        if L.shape != (n, n):
            raise DimensionMismatch(f"L has shape {L.shape}, expected ({n}, {n})")
        if np.linalg.matrix_rank(L) < n:
            raise ValueError("L must be nonsingular")
        vecs = {}
        for name in ("x0", "b"):
            v = getattr(self, name)
            v = np.zeros(n) if v is None else np.array(v, dtype=float).reshape(-1)
            if v.shape != (n,):
                raise DimensionMismatch(f"{name} has shape {v.shape}, expected ({n},)")
            v.setflags(write=False)
            vecs[name] = v
        L.setflags(write=False)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "x0", vecs["x0"])
        object.__setattr__(self, "b", vecs["b"])
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "scale", _check_positive("scale", self.scale))
        object.__setattr__(self, "dim", n)

    def transform(self, X):
        return X @ self.L.T - self.x0

    def value(self, X):
        return self.scale * self.inner.value(self.transform(X)) + X @ self.b + self.c

    def grad(self, X):
        return self.scale * self.inner.grad(self.transform(X)) @ self.L + self.b

    def divergence(self, X, Y):
        return self.scale * self.inner.divergence(self.transform(X), self.transform(Y))

    def degree(self):
        if np.any(self.x0) or np.any(self.b) or self.c != 0.0:
            return None
        return self.inner.degree()


def as_points(f: ReferenceFunction, x: ArrayLike):
    """Coerce ``x`` to an array with trailing axis ``f.dim``.

    Returns the array and a flag telling whether the input was a bare scalar.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        if f.dim != 1:
            raise DimensionMismatch(f"scalar point given for a function on R^{f.dim}")
        return arr.reshape(1), True
    if arr.shape[-1] != f.dim:
        raise DimensionMismatch(f"point has trailing dimension {arr.shape[-1]}, expected {f.dim}")
    return arr, False


def _scalar(v):
    return float(v) if np.ndim(v) == 0 else v


def evaluate(f: ReferenceFunction, x: ArrayLike):
    X, _ = as_points(f, x)
    return _scalar(f.value(X))


def gradient(f: ReferenceFunction, x: ArrayLike):
    X, was_scalar = as_points(f, x)
    g = f.grad(X)
    return float(g[0]) if was_scalar else g


def bregman(f: ReferenceFunction, x: ArrayLike, y: ArrayLike):
    """Bregman distance D_f(x, y); broadcasts over leading axes."""
    X, _ = as_points(f, x)
    Y, _ = as_points(f, y)
    return _scalar(f.divergence(X, Y))


def homogeneity_degree(f: ReferenceFunction) -> Optional[float]:
    """Degree p with f(tx) = t^p f(x) for t > 0, or None when f is not
    (recognizably) positively homogeneous."""
    return f.degree()
