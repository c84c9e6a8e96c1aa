"""Symmetry coefficient alpha(h) = inf D_h(x, y) / D_h(y, x) for the catalog.

For h = |.|^p the infimum reduces to a one-dimensional profile

    f_p(u) = D(u, 1) / D(1, u) = (|u|^p - p u + p - 1) / ((p-1)|u|^p - p sgn(u)|u|^(p-1) + 1)

which, for p > 2, is quasiconcave on [-1, 1] with its maximum at -u0, where
u0 is the unique root in [0, 1] of

    g_p(u) = u^(2(p-1)) - (p-1)^2 u^p - 2p(p-2) u^(p-1) - (p-1)^2 u^(p-2) + 1.

Then alpha(|.|^p) = 1 / f_p(-u0), and p in (1, 2) reduces to the conjugate
exponent p / (p - 1).  Norm powers ||.||_2^p and ||.||_p^p share the
coefficient of |.|^p in every dimension.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .catalog import (
    AffineImage,
    PiecewiseQuadratic1D,
    PNormPower,
    PowerAbs,
    QuadraticForm,
    ReferenceFunction,
    ScaledSum,
    TwoNormPower,
)

DEFAULT_TOL = 1e-15
MAX_BISECTION_STEPS = 200
_EPS = np.finfo(float).eps


class Method(str, enum.Enum):
    CLOSED_FORM = "ClosedForm"
    BISECTION = "Bisection"
    SUM_RULE = "SumRule"
    CONJUGATE_REDUCTION = "ConjugateReduction"
    PIECEWISE_FORMULA = "PiecewiseFormula"
    PERFECT_SYMMETRY = "PerfectSymmetry"


class NormKind(str, enum.Enum):
    TWO = "two"      # ||.||_2^p
    PSELF = "pself"  # ||.||_p^p


@dataclass(frozen=True)
class SymmetryCertificate:
    """A computed symmetry coefficient and the evidence behind it.

    ``u0`` is the root of g_p for the exponent actually bisected
    (``exponent``, which is the conjugate when the input was below 2) and
    ``bracket`` the final bisection interval.
    """

    alpha: float
    method: Method
    u0: Optional[float] = None
    iterations: int = 0
    residual: float = 0.0
    exponent: Optional[float] = None
    bracket: Optional[tuple] = None


@dataclass(frozen=True)
class Interval:
    """Enclosure [lo, hi] of a symmetry coefficient that has no point rule."""

    lo: float
    hi: float

    def __contains__(self, value):
        return self.lo <= value <= self.hi


class RuleNotApplicable(ValueError):
    def __init__(self, message, interval: Interval):
        super().__init__(message)
        self.interval = interval


def _exponent(p, lower=1.0):
    p = float(p)
    if not (math.isfinite(p) and p > lower):
        raise ValueError(f"exponent must be a finite real > {lower:g}, got {p!r}")
    return p


# ---------------------------------------------------------------------------
# one-dimensional machinery

_SERIES_TERMS = 60


def _ratio_parts(p, u):
    """Numerator D(u, 1) and denominator D(1, u) of f_p, up to the common factor p.

    Both vanish to second order at u = 1, so for u > 0 they are formed from
    t = u - 1 (exact near 1): with expm1/log1p in general and with the
    binomial series when p|t| is small, where even expm1 cancels.
    """
    u = np.asarray(u, dtype=float)
    a = np.abs(u)
    with np.errstate(over="ignore", invalid="ignore"):
        num = a ** p - p * u + (p - 1.0)
        den = (p - 1.0) * a ** p - p * np.sign(u) * a ** (p - 1.0) + 1.0
    pos = u > 0.0
    if np.any(pos):
        t = np.where(pos, u - 1.0, 0.0)
        with np.errstate(over="ignore", invalid="ignore"):
            log_u = np.log1p(t)
            num = np.where(pos, np.expm1(p * log_u) - p * t, num)
            den = np.where(pos, (p - 1.0) * t * np.exp((p - 1.0) * log_u)
                           - np.expm1((p - 1.0) * log_u), den)
        near = pos & (np.abs(t) * max(p, 2.0) <= 0.5)
        if np.any(near):
            tn = np.where(near, t, 0.0)
            # N = sum_k C(p, k) t^k,  den = sum_k C(p-1, k-1) p (k-1)/k t^k,  k >= 2
            b = p * (p - 1.0) / 2.0
            e = p - 1.0
            tk = tn * tn
            sn = b * tk
            sd = e * p / 2.0 * tk
            for k in range(3, _SERIES_TERMS):
                b *= (p - k + 1.0) / k
                e *= (p - k + 1.0) / (k - 1.0)
                tk = tk * tn
                sn = sn + b * tk
                sd = sd + e * p * (k - 1.0) / k * tk
            num = np.where(near, sn, num)
            den = np.where(near, sd, den)
    return num, den


def _f_scalar(p, u):
    if u == 1.0:
        return 1.0
    num, den = _ratio_parts(p, u)
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(num / den)


def _g_scalar(p, u):
    pm1 = p - 1.0
    return (u ** (2.0 * pm1) - pm1 * pm1 * u ** p - 2.0 * p * (p - 2.0) * u ** pm1
            - pm1 * pm1 * u ** (p - 2.0) + 1.0)


def bregman_ratio_1d(p: float, u):
    """The profile f_p(u) = D(u, 1) / D(1, u) of |.|^p (value 1 at u = 1).

    Accepts scalars or arrays.
    """
    p = _exponent(p)
    u = np.asarray(u, dtype=float)
    if u.ndim == 0:
        return _f_scalar(p, float(u))
    num, den = _ratio_parts(p, u)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(u == 1.0, 1.0, num / den)


def stationarity_poly(p: float, u):
    """g_p(u) on [0, 1] for p > 2; its root u0 locates the maximizer -u0 of f_p."""
    p = _exponent(p, 2.0)
    arr = np.asarray(u, dtype=float)
    if np.any((arr < 0.0) | (arr > 1.0)) or np.any(np.isnan(arr)):
        raise ValueError("g_p is defined on [0, 1]")
    if arr.ndim == 0:
        return _g_scalar(p, float(arr))
    pm1 = p - 1.0
    return (arr ** (2.0 * pm1) - pm1 ** 2 * arr ** p - 2.0 * p * (p - 2.0) * arr ** pm1
            - pm1 ** 2 * arr ** (p - 2.0) + 1.0)


def bregman_ratio_polar(p: float, u: float, r: float) -> float:
    """F_p(u, r): the ratio D(x, y) / D(y, x) of ||.||_2^p written in terms of
    u = ||x|| / ||y|| and the cosine r of the angle between x and y."""
    p = _exponent(p, 2.0)
    u, r = float(u), float(r)
    if u < 0.0 or not -1.0 <= r <= 1.0:
        raise ValueError("need u >= 0 and r in [-1, 1]")
    if u == 1.0 and r == 1.0:
        raise ValueError("(u, r) = (1, 1) corresponds to x = y")
    return (u ** p - p * r * u + (p - 1.0)) / ((p - 1.0) * u ** p - p * r * u ** (p - 1.0) + 1.0)


# contract names
f_p_eval = bregman_ratio_1d
g_p_eval = stationarity_poly
F_p_eval = bregman_ratio_polar


def conjugate_exponent(p: float) -> float:
    """Hölder conjugate p / (p - 1)."""
    p = _exponent(p)
    return p / (p - 1.0)


def residual_tolerance(p: float, width: float) -> float:
    """A-posteriori bound on |g_p(u0)| for a midpoint of a bracket of the given
    width around the root: Lipschitz term plus rounding slack."""
    pm1 = p - 1.0
    coeffs = [(2.0 * pm1, 1.0), (p, pm1 * pm1), (pm1, 2.0 * p * (p - 2.0)),
              (p - 2.0, pm1 * pm1), (0.0, 1.0)]
    lipschitz = sum(k * c for k, c in coeffs)
    total = sum(c for _, c in coeffs)
    return 0.5 * lipschitz * width + 16.0 * _EPS * total


def alpha_power(p: float, tol: float = DEFAULT_TOL) -> SymmetryCertificate:
    """alpha(|.|^p) by bisection on g_p over [0, 1].

    Terminates when the bracket is at most ``tol`` wide, when the midpoint
    no longer splits it in floating point, or after 200 halvings.
    """
    p = _exponent(p)
    tol = float(tol)
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    if p == 2.0:
        return SymmetryCertificate(1.0, Method.PERFECT_SYMMETRY, exponent=2.0)
    method = Method.BISECTION
    q = p
    if p < 2.0:
        q = p / (p - 1.0)
        method = Method.CONJUGATE_REDUCTION
    # g_q(0) = 1 > 0 and g_q(1) = 4q(2 - q) < 0
    lo, hi = 0.0, 1.0
    steps = 0
    while hi - lo > tol and steps < MAX_BISECTION_STEPS:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if _g_scalar(q, mid) > 0.0:
            lo = mid
        else:
            hi = mid
        steps += 1
    u0 = 0.5 * (lo + hi)
    alpha = 1.0 / _f_scalar(q, -u0)
    return SymmetryCertificate(alpha, method, u0=u0, iterations=steps,
                               residual=abs(_g_scalar(q, u0)), exponent=q,
                               bracket=(lo, hi))


def alpha_bounds(p: float) -> tuple[float, float]:
    """(1/(2p), 1/(p-1)): strict lower and attained-or-not upper bound for p > 2."""
    p = _exponent(p, 2.0)
    return 1.0 / (2.0 * p), 1.0 / (p - 1.0)


def alpha_piecewise_quadratic(a: float, b: float) -> float:
    """alpha of h(x) = a x^2 (x >= 0), b x^2 (x < 0)."""
    a, b = float(a), float(b)
    if not (a > 0.0 and b > 0.0 and math.isfinite(a) and math.isfinite(b)):
        raise ValueError("a and b must be finite and positive")
    ra, rb = math.sqrt(a / b), math.sqrt(b / a)
    return min((1.0 + ra) / (1.0 + rb), (1.0 + rb) / (1.0 + ra))


# ---------------------------------------------------------------------------
# sums

def _norm_kind(r) -> NormKind:
    if isinstance(r, NormKind):
        return r
    key = str(r).strip().lower()
    if key in ("two", "2"):
        return NormKind.TWO
    if key in ("pself", "p", "self"):
        return NormKind.PSELF
    raise ValueError(f"norm kind must be 'two' or 'pself', got {r!r}")


def alpha_sum_mixed(terms: Sequence[tuple], dim: int = 1,
                    tol: float = DEFAULT_TOL) -> SymmetryCertificate:
    """alpha of sum_i w_i ||.||_{r_i}^{p_i} on R^dim with r_i in {2, p_i}.

    ``terms`` holds (weight, p, kind) with kind 'two' or 'pself'.  The value
    is min(alpha(|.|^p_min), alpha(|.|^p_max)) when the smallest and the
    largest exponent are each carried by a single term; otherwise
    RuleNotApplicable is raised with the enclosure [min_i alpha_i, upper].
    """
    if int(dim) != dim or dim < 1:
        raise ValueError(f"dim must be a positive integer, got {dim!r}")
    if not terms:
        raise ValueError("need at least one term")
    parsed = []
    for w, p, r in terms:
        w = float(w)
        if not (w > 0.0 and math.isfinite(w)):
            raise ValueError(f"weights must be positive, got {w!r}")
        parsed.append((w, _exponent(p), _norm_kind(r)))
    if len(parsed) == 1:
        return alpha_power(parsed[0][1], tol)

    exps = sorted(p for _, p, _ in parsed)
    alphas = {p: alpha_power(p, tol).alpha for p in set(exps)}
    p_min, p_max = exps[0], exps[-1]
    lower = min(alphas.values())
    upper = min(alphas[p_min], alphas[p_max])
    if p_min == p_max:
        # a single exponent shared by several terms
        raise RuleNotApplicable(
            f"all terms share the exponent {p_min:g}", Interval(lower, upper))
    if exps[1] == p_min or exps[-2] == p_max:
        raise RuleNotApplicable(
            "extremal exponent carried by more than one term", Interval(lower, upper))
    return SymmetryCertificate(upper, Method.SUM_RULE)


# ---------------------------------------------------------------------------
# dispatcher

def _power_term(f):
    """(coeff, p, kind) for norm-power families, else None."""
    if isinstance(f, PowerAbs):
        return f.coeff, f.p, NormKind.PSELF
    if isinstance(f, TwoNormPower):
        kind = NormKind.PSELF if (f.dim == 1 or f.p == 2.0) else NormKind.TWO
        return f.coeff, f.p, kind
    if isinstance(f, PNormPower):
        return f.coeff, f.p, NormKind.PSELF
    return None


def _is_plain_quadratic(f):
    if isinstance(f, QuadraticForm):
        return True
    t = _power_term(f)
    return t is not None and t[1] == 2.0


def _drop_affine(f):
    # alpha(h + <b, .> + c) = alpha(h), and affine parts of summands add up
    if isinstance(f, QuadraticForm) and (np.any(f.b) or f.c != 0.0):
        return QuadraticForm(f.Q)
    if isinstance(f, AffineImage) and (np.any(f.b) or f.c != 0.0):
        return AffineImage(f.inner, f.L, f.x0, scale=f.scale)
    return f


def _as_interval(res):
    if isinstance(res, Interval):
        return res
    return Interval(res.alpha, res.alpha)


def _alpha_of_sum(f: ScaledSum, tol):
    terms = [(w, _drop_affine(g)) for w, g in f.terms]
    funcs = [g for _, g in terms]

    if all(_is_plain_quadratic(g) for g in funcs):
        return SymmetryCertificate(1.0, Method.PERFECT_SYMMETRY)

    if f.dim == 1 and all(_is_plain_quadratic(g) or isinstance(g, PiecewiseQuadratic1D)
                          for g in funcs):
        a = b = 0.0
        for w, g in terms:
            if isinstance(g, PiecewiseQuadratic1D):
                a, b = a + w * g.a, b + w * g.b
            elif isinstance(g, QuadraticForm):
                q = 0.5 * w * float(g.Q[0, 0])
                a, b = a + q, b + q
            else:
                c = w * _power_term(g)[0]
                a, b = a + c, b + c
        return _alpha_pw(a, b)

    powers = [_power_term(g) for g in funcs]
    if all(t is not None for t in powers):
        merged = {}
        for w, (coeff, p, kind) in zip((w for w, _ in terms), powers):
            key = (p, NormKind.PSELF if f.dim == 1 else kind)
            merged[key] = merged.get(key, 0.0) + w * coeff
        mixed = [(w, p, kind) for (p, kind), w in sorted(merged.items())]
        try:
            return alpha_sum_mixed(mixed, f.dim, tol)
        except RuleNotApplicable as exc:
            return exc.interval

    # general homogeneous-sum bounds
    enclosures = [_as_interval(alpha_of(g, tol)) for g in funcs]
    lower = min(e.lo for e in enclosures)
    degrees = [g.degree() for g in funcs]
    upper = 1.0
    if all(d is not None for d in degrees) and len(funcs) > 1:
        order = sorted(range(len(funcs)), key=lambda i: degrees[i])
        d = [degrees[i] for i in order]
        if d[0] < d[1] and d[-2] < d[-1]:
            upper = min(enclosures[order[0]].hi, enclosures[order[-1]].hi)
    if lower == upper:
        return SymmetryCertificate(lower, Method.SUM_RULE)
    return Interval(lower, upper)


def _alpha_pw(a, b):
    if a == b:
        return SymmetryCertificate(1.0, Method.PERFECT_SYMMETRY)
    return SymmetryCertificate(alpha_piecewise_quadratic(a, b), Method.PIECEWISE_FORMULA)


def alpha_of(f: ReferenceFunction, tol: float = DEFAULT_TOL) -> Union[SymmetryCertificate, Interval]:
    """Symmetry coefficient of any catalog function.

    Returns a certificate when a point rule applies and an Interval
    enclosure otherwise.
    """
    if isinstance(f, (PowerAbs, TwoNormPower, PNormPower)):
        return alpha_power(f.p, tol)
    if isinstance(f, QuadraticForm):
        return SymmetryCertificate(1.0, Method.PERFECT_SYMMETRY)
    if isinstance(f, PiecewiseQuadratic1D):
        return _alpha_pw(f.a, f.b)
    if isinstance(f, AffineImage):
        return alpha_of(f.inner, tol)
    if isinstance(f, ScaledSum):
        return _alpha_of_sum(f, tol)
    raise TypeError(f"not a catalog function: {f!r}")
