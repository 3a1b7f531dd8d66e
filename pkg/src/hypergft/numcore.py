"""Foundational numerics: log-gamma, gamma ratios, Pochhammer symbols, binomials.

Everything downstream (series summation, closed forms, certification) funnels
its gamma arithmetic through this module so that a single precision policy and
a single pole-detection radius govern the whole package.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import PoleError, ZeroError

# Radius around 0, -1, -2, ... inside which an argument counts as a gamma pole.
POLE_TOL = 1e-12

# Direct-product cutoff for Pochhammer symbols; beyond this the gamma ratio
# in log space avoids O(n) rounding accumulation.
_POCHHAMMER_DIRECT_LIMIT = 64

_LOG_PI = math.log(math.pi)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Lanczos coefficients, g = 7, n = 9.
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LANCZOS_G = 7.0


@dataclass(frozen=True)
class PrecisionPolicy:
    """Shared accuracy contract: relative target, underflow floor, term budget."""

    rel_tol: float = 1e-12
    abs_tol: float = 1e-300
    max_terms: int = 100_000

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


DEFAULT_POLICY = PrecisionPolicy()


def is_nonpositive_integer(z: complex, tol: float = POLE_TOL) -> bool:
    """True when z lies within tol of 0, -1, -2, ..."""
    z = complex(z)
    if abs(z.imag) > tol:
        return False
    r = round(z.real)
    return r <= 0 and abs(z.real - r) <= tol


def nonpositive_integer_value(z: complex, tol: float = POLE_TOL) -> int:
    """The integer -m that z approximates; caller must check membership first."""
    return int(round(complex(z).real))


def _lanczos_log_gamma(z: complex) -> complex:
    # Valid for Re(z) >= 0.5.
    zm1 = z - 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (zm1 + i)
    t = zm1 + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zm1 + 0.5) * cmath.log(t) - t + cmath.log(x)


def _log_sin_pi_upper(z: complex) -> complex:
    # Continuous logarithm of sin(pi z) on the closed upper half-plane:
    # sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}), and 1 - e^{2 pi i z}
    # stays in the closed right half-plane, so the principal log never jumps.
    w = cmath.exp(2j * cmath.pi * z)
    return 0.5j * cmath.pi - math.log(2.0) - 1j * cmath.pi * z + cmath.log(1.0 - w)


def log_gamma(z: complex) -> complex:
    """Principal-branch log-gamma (analytic continuation off the cut).

    Agrees with log(Gamma(x)) for x > 0; for Re(z) < 0.5 the reflection
    formula is applied with a branch-stable log-sine so the result is the
    standard continuation (conjugate-symmetric across the real axis).
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"log_gamma pole at z={z}")
    if z.imag < 0.0:
        return log_gamma(z.conjugate()).conjugate()
    if z.real >= 0.5:
        return _lanczos_log_gamma(z)
    return _LOG_PI - _lanczos_log_gamma(1.0 - z) - _log_sin_pi_upper(z)


def gamma_ratio(numerators: list[complex], denominators: list[complex]) -> complex:
    """exp(sum log Gamma(numerators) - sum log Gamma(denominators)).

    Works where the individual gammas would overflow; exponentiating the
    difference of logs makes the result branch-insensitive.
    """
    acc = 0.0 + 0.0j
    for v in numerators:
        v = complex(v)
        if is_nonpositive_integer(v):
            raise PoleError(f"gamma_ratio numerator pole at {v}")
        acc += log_gamma(v)
    for v in denominators:
        v = complex(v)
        if is_nonpositive_integer(v):
            raise ZeroError(f"gamma_ratio denominator pole at {v}; ratio is zero")
        acc -= log_gamma(v)
    return cmath.exp(acc)


def _as_output(value: complex, *inputs: complex):
    if any(isinstance(v, complex) for v in inputs):
        return value
    return value.real


def pochhammer(a: complex, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.

    Direct product below the cutoff, gamma ratio in log space beyond it;
    interior zeros (a a nonpositive integer within range) short-circuit to 0.
    """
    if n < 0:
        raise ValueError("pochhammer order must be a natural number")
    za = complex(a)
    if n == 0:
        return _as_output(1.0 + 0.0j, a)
    if n <= _POCHHAMMER_DIRECT_LIMIT:
        out = 1.0 + 0.0j
        for j in range(n):
            out *= za + j
        return _as_output(out, a)
    if is_nonpositive_integer(za):
        m = -nonpositive_integer_value(za)
        if m < n:
            return _as_output(0.0 + 0.0j, a)
        out = 1.0 + 0.0j
        for j in range(n):
            out *= za + j
        return _as_output(out, a)
    return _as_output(cmath.exp(log_gamma(za + n) - log_gamma(za)), a)


def pochhammer_split_residual(a: complex, k: int, n: int) -> float:
    """Relative defect of the order-k splitting of (a)_{kn}.

    Both sides are built from independent direct products:
    the left as the kn-term rising factorial, the right as
    k^{kn} * prod_{j<k} ((a+j)/k)_n.
    """
    if k < 1:
        raise ValueError("split order k must be >= 1")
    if n < 0:
        raise ValueError("n must be a natural number")
    za = complex(a)
    lhs = 1.0 + 0.0j
    for j in range(k * n):
        lhs *= za + j
    rhs = complex(k) ** (k * n)
    for j in range(k):
        base = (za + j) / k
        for i in range(n):
            rhs *= base + i
    return abs(lhs - rhs) / max(abs(lhs), DEFAULT_POLICY.abs_tol)


def gen_binomial(alpha: complex, n: int):
    """Generalized binomial coefficient binom(alpha, n) = (alpha)(alpha-1)...(alpha-n+1)/n!."""
    if n < 0:
        raise ValueError("binomial order must be a natural number")
    za = complex(alpha)
    out = 1.0 + 0.0j
    for j in range(n):
        out *= (za - j) / (j + 1)
    return _as_output(out, alpha)
