"""Exact integer polynomials behind the closed forms of alpha(|.|^p).

For integer p the stationarity polynomial g_p is palindromic.  For even
p >= 4 it factors as

    g_p(u) = (u + 1)^4 * h1_p(u) * h2_p(u)

where the coefficients of h1_p are triangular numbers and the product
h1_p * h2_p has tetrahedral coefficients.  Each palindromic factor of even
degree d equals u^(d/2) * r(u + 1/u) for a polynomial r of degree d/2, which
brings the root search for p <= 10 down to degree four or less.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .symmetry import bregman_ratio_1d


@dataclass(frozen=True)
class IntegerPolynomial:
    """Polynomial with integer coefficients, constant term first."""

    coeffs: tuple

    def __post_init__(self):
        cs = [int(c) for c in self.coeffs]
        if any(int(c) != c for c in self.coeffs):
            raise ValueError("coefficients must be integers")
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs) if cs else (0,))

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntegerPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self):
        return IntegerPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerPolynomial(tuple(other * c for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntegerPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntegerPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]


def triangular(k: int) -> int:
    """T_k = k(k+1)/2, and 0 for k <= 0."""
    return k * (k + 1) // 2 if k > 0 else 0


def tetrahedral(n: int) -> int:
    """Te_n = T_1 + ... + T_n = n(n+1)(n+2)/6, and 0 for n <= 0."""
    return n * (n + 1) * (n + 2) // 6 if n > 0 else 0


def _even_p(p) -> int:
    if int(p) != p or p < 4 or int(p) % 2:
        raise ValueError(f"p must be an even integer >= 4, got {p!r}")
    return int(p)


def _stationarity_int(p: int) -> IntegerPolynomial:
    c = [0] * (2 * (p - 1) + 1)
    c[0] = c[-1] = 1
    c[p - 2] -= (p - 1) ** 2
    c[p] -= (p - 1) ** 2
    c[p - 1] -= 2 * p * (p - 2)
    return IntegerPolynomial(tuple(c))


def g_p_int(p: int) -> IntegerPolynomial:
    """g_p as an integer polynomial of degree 2(p-1), for even p >= 4."""
    return _stationarity_int(_even_p(p))


def h1_int(p: int) -> IntegerPolynomial:
    p = _even_p(p)
    m = p - 4
    return IntegerPolynomial(tuple((-1) ** k * triangular(min(k, m - k) + 1)
                                   for k in range(m + 1)))


def h2_int(p: int) -> IntegerPolynomial:
    p = _even_p(p)
    c = [(-1) ** i for i in range(p - 1)]
    c[p // 2 - 1] += (-1) ** (p // 2 - 1) * (p - 1)
    return IntegerPolynomial(tuple(c))


def tetrahedral_series(p: int) -> IntegerPolynomial:
    """sum_k Te_{min(k, 2(p-3)-k)+1} (-u)^k for k = 0 .. 2(p-3)."""
    p = _even_p(p)
    m = 2 * (p - 3)
    return IntegerPolynomial(tuple((-1) ** k * tetrahedral(min(k, m - k) + 1)
                                   for k in range(m + 1)))


_ONE_PLUS_U_4 = IntegerPolynomial((1, 1)) ** 4


def factor_check(p: int) -> bool:
    """Exact check of g_p = (u+1)^4 h1_p h2_p, including the tetrahedral
    middle form, for even p >= 4."""
    g = g_p_int(p)
    series = tetrahedral_series(p)
    product = h1_int(p) * h2_int(p)
    return (_ONE_PLUS_U_4 * product == g and product == series
            and _ONE_PLUS_U_4 * series == g)


def half_substitution(poly: IntegerPolynomial) -> IntegerPolynomial:
    """The polynomial r of degree d/2 with poly(u) = u^(d/2) r(u + 1/u).

    Uses u^j + u^-j = D_j(v) with D_0 = 2, D_1 = v, D_j = v D_{j-1} - D_{j-2}.
    """
    d = poly.degree
    if d < 0 or d % 2 or not poly.is_palindromic():
        raise ValueError("need a palindromic polynomial of even degree")
    m = d // 2
    c = poly.coeffs
    out = IntegerPolynomial((c[m],))
    v = IntegerPolynomial((0, 1))
    prev, cur = IntegerPolynomial((2,)), v
    for j in range(1, m + 1):
        out = out + cur * c[m + j]
        prev, cur = cur, cur * v - prev
    return out


# ---------------------------------------------------------------------------
# radical root formulas up to degree four

def _cbrt(z: complex) -> complex:
    if z == 0:
        return 0j
    return cmath.exp(cmath.log(z) / 3.0)


def _roots_complex(c: Sequence[float]) -> list:
    """All complex roots of sum c_k x^k, degree 1..4, by radicals."""
    c = [float(x) for x in c]
    while len(c) > 1 and c[-1] == 0.0:
        c.pop()
    deg = len(c) - 1
    if deg < 1:
        return []
    lead = c[-1]
    a = [x / lead for x in c]  # monic, a[deg] = 1
    if deg == 1:
        return [complex(-a[0])]
    if deg == 2:
        b, k = a[1], a[0]
        s = cmath.sqrt(b * b - 4.0 * k)
        q = -0.5 * (b + s) if b >= 0.0 else -0.5 * (b - s)
        if q == 0:
            return [0j, 0j]
        return [q, k / q]
    if deg == 3:
        A, B, C = a[2], a[1], a[0]
        p = B - A * A / 3.0
        q = 2.0 * A ** 3 / 27.0 - A * B / 3.0 + C
        disc = cmath.sqrt(q * q / 4.0 + p ** 3 / 27.0)
        w = _cbrt(-q / 2.0 + disc)
        if abs(w) < 1e-300:
            w = _cbrt(-q / 2.0 - disc)
        omega = complex(-0.5, math.sqrt(3.0) / 2.0)
        out = []
        for k in range(3):
            wk = w * omega ** k
            t = wk - p / (3.0 * wk) if abs(wk) > 0 else 0j
            out.append(t - A / 3.0)
        return out
    if deg == 4:
        A, B, C, D = a[3], a[2], a[1], a[0]
        p = B - 3.0 * A * A / 8.0
        q = A ** 3 / 8.0 - A * B / 2.0 + C
        r = -3.0 * A ** 4 / 256.0 + A * A * B / 16.0 - A * C / 4.0 + D
        shift = -A / 4.0
        if abs(q) < 1e-14 * (1.0 + abs(p) + abs(r)):
            zs = _roots_complex([r, p, 1.0])
            ys = []
            for z in zs:
                s = cmath.sqrt(z)
                ys += [s, -s]
            return [y + shift for y in ys]
        # resolvent cubic 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0
        ms = _roots_complex([-q * q, 2.0 * p * p - 8.0 * r, 8.0 * p, 8.0])
        m = max(ms, key=lambda z: abs(z))
        s = cmath.sqrt(2.0 * m)
        out = []
        for sign in (1.0, -1.0):
            inner = cmath.sqrt(-(2.0 * p + 2.0 * m + sign * 2.0 * q / s))
            out += [(sign * s + inner) / 2.0 + shift, (sign * s - inner) / 2.0 + shift]
        return out
    raise ValueError("radical formulas implemented up to degree 4")


def _poly_eval(c, x):
    acc = 0.0
    for k in reversed(c):
        acc = acc * x + k
    return acc


def real_roots(poly, verify_tol: float = 1e-10) -> list:
    """Real roots of a polynomial of degree <= 4 via radical formulas.

    Each candidate is polished by Newton steps and kept only if
    |poly(v)| <= verify_tol * (1 + sum |c_k| |v|^k).
    """
    c = [float(x) for x in (poly.coeffs if isinstance(poly, IntegerPolynomial) else poly)]
    dc = [k * c[k] for k in range(1, len(c))]
    found = []
    for z in _roots_complex(c):
        if abs(z.imag) > 1e-6 * (1.0 + abs(z.real)):
            continue
        v = z.real
        for _ in range(3):
            d = _poly_eval(dc, v)
            if d == 0.0:
                break
            v_new = v - _poly_eval(c, v) / d
            if not math.isfinite(v_new):
                break
            v = v_new
        scale = 1.0 + sum(abs(ck) * abs(v) ** k for k, ck in enumerate(c))
        if abs(_poly_eval(c, v)) <= verify_tol * scale:
            if not any(abs(v - w) <= 1e-12 * (1.0 + abs(w)) for w in found):
                found.append(v)
    return sorted(found)


def _u_from_v(v: float) -> float:
    # branch of u + 1/u = v with u in (0, 1]
    return 2.0 / (v + math.sqrt(max(v * v - 4.0, 0.0)))


def reduced_factors(p: int) -> list:
    """Palindromic factors of g_p whose (0, 1) root is sought: g_3 itself for
    p = 3, and (h1_p, h2_p) for even p >= 4."""
    if p == 3:
        return [_stationarity_int(3)]
    return [h1_int(p), h2_int(p)]


def closed_form_root(p: int) -> float:
    """The root u0 in (0, 1) of g_p from the half-substituted factors
    (p = 3 or even p in 4..10)."""
    if p not in (3, 4, 6, 8, 10):
        raise ValueError(f"factor-based root extraction supports p in 3, 4, 6, 8, 10; got {p!r}")
    candidates = []
    for factor in reduced_factors(p):
        if factor.degree < 2:
            continue
        for v in real_roots(half_substitution(factor)):
            if v > 2.0:
                candidates.append(_u_from_v(v))
    if len(candidates) != 1:
        raise ArithmeticError(f"expected one root in (0, 1) for p={p}, got {candidates}")
    return candidates[0]


def _alpha3_table():
    return (1.0 - math.sqrt(2.0) * 3.0 ** 0.25 + math.sqrt(3.0)) / 2.0


def _alpha8():
    s2 = math.sqrt(2.0)
    c_minus = (7.0 * (13.0 - 9.0 * s2)) ** (1.0 / 3.0)
    c_plus = (7.0 * (13.0 + 9.0 * s2)) ** (1.0 / 3.0)
    b1 = 1.0 + 7.0 ** (1.0 / 3.0) * ((13.0 - 9.0 * s2) ** (1.0 / 3.0)
                                      + (13.0 + 9.0 * s2) ** (1.0 / 3.0))
    b2 = math.sqrt(b1 * b1 - 36.0)
    b3 = b1 + b2
    return ((13996800.0 + 2239488.0 * (b2 + c_minus + c_plus) + b3 ** 8)
            / (1679616.0 + 48.0 * b3 ** 7 + 7.0 * b3 ** 8))


def _alpha10():
    c1 = 3.0 ** (1.0 / 3.0)
    c2 = 3.0 ** (2.0 / 3.0)
    root = math.sqrt(c2 + 2.0 * c1 - 3.0)
    return ((201.0 + 23.0 * c2 + 126.0 * c1 - (135.0 + 50.0 * c2 + 45.0 * c1) * root)
            / (2.0 * (c2 + 12.0 * (1.0 + c1))))


def closed_form_alpha(p: int) -> float:
    """Radical expression of alpha(|.|^p) for p in {2, 3, 4, 6, 8, 10}.

    For p = 3 the value is obtained from the quartic g_3 (reduced to a
    quadratic) and checked against the radical form.
    """
    if p == 2:
        return 1.0
    if p == 3:
        alpha = 1.0 / bregman_ratio_1d(3.0, -closed_form_root(3))
        ref = _alpha3_table()
        if abs(alpha - ref) > 1e-12 * ref:
            raise ArithmeticError(f"p=3 quartic route {alpha!r} disagrees with radical {ref!r}")
        return alpha
    if p == 4:
        return 2.0 - math.sqrt(3.0)
    if p == 6:
        return (7.0 - 3.0 * math.sqrt(5.0)) / 2.0
    if p == 8:
        return _alpha8()
    if p == 10:
        return _alpha10()
    raise ValueError(f"no closed form for p={p!r}; supported: 2, 3, 4, 6, 8, 10")


__all__ = [
    "IntegerPolynomial", "triangular", "tetrahedral", "g_p_int", "h1_int", "h2_int",
    "tetrahedral_series", "factor_check", "half_substitution", "real_roots",
    "reduced_factors", "closed_form_root", "closed_form_alpha",
]
