"""Exponential-integral kernel.

Every closed-form capacity in this package is a combination of the scaled
quantity ``exp(x) * Ei(-x)`` for positive ``x``.  :func:`exp_ei` evaluates it
without forming ``exp(x)`` for large arguments, so high-SNR / small-gain
configurations never overflow.

``E1`` is evaluated by its power series for ``x <= 1`` and by the modified
Lentz continued fraction for ``x > 1``.
"""

import math

EULER_GAMMA = 0.57721566490153286061
SWITCH_POINT = 1.0
RTOL = 1e-15
MAX_ITER = 500
_TINY = 1e-300


class ConvergenceError(ArithmeticError):
    """Raised when a series or continued fraction does not converge."""


def _check_arg(x):
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"argument must be positive and finite, got {x!r}")
    return x


def _e1_series(x):
    # E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    total = 0.0
    term = 1.0
    for k in range(1, MAX_ITER + 1):
        term *= -x / k
        contrib = term / k
        total += contrib
        if abs(contrib) <= RTOL * abs(total):
            return -EULER_GAMMA - math.log(x) - total
    raise ConvergenceError(f"E1 series did not converge for x={x}")


def _scaled_e1_cf(x):
    """Return exp(x) * E1(x) from the continued fraction (modified Lentz)."""
    b = x + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITER + 1):
        an = -float(i * i)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) <= RTOL:
            return h
    raise ConvergenceError(f"E1 continued fraction did not converge for x={x}")


def e1(x):
    """Exponential integral ``E1(x)`` for real ``x > 0``."""
    x = _check_arg(x)
    if x <= SWITCH_POINT:
        return _e1_series(x)
    return _scaled_e1_cf(x) * math.exp(-x)


def ei_neg(x):
    """Return ``Ei(-x) = -E1(x)`` for ``x > 0``.

    Strictly negative, increasing towards ``0-`` as ``x`` grows and
    diverging like ``ln(x) + gamma`` as ``x -> 0+``.

    >>> round(ei_neg(1.0), 7)
    -0.2193839
    """
    return -e1(x)


def exp_ei(x):
    """Return ``exp(x) * Ei(-x)`` for ``x > 0`` without overflow.

    >>> round(exp_ei(1.0), 7)
    -0.5963474
    """
    x = _check_arg(x)
    if x <= SWITCH_POINT:
        return -math.exp(x) * _e1_series(x)
    return -_scaled_e1_cf(x)


def exp_ei_deriv(x, order=1):
    """Derivative of :func:`exp_ei` of order 1 or 2.

    Uses ``f' = f + 1/x`` and ``f'' = f + 1/x - 1/x**2``.
    """
    f = exp_ei(x)
    if order == 1:
        return f + 1.0 / x
    if order == 2:
        return f + 1.0 / x - 1.0 / (x * x)
    raise ValueError("order must be 1 or 2")


def exp_ei_dd1(a, b, rtol=1e-9):
    """First divided difference ``(f(b) - f(a)) / (b - a)`` of :func:`exp_ei`.

    When ``a`` and ``b`` coincide to within ``rtol`` the derivative at the
    midpoint is returned (the removable-singularity limit).
    """
    a = _check_arg(a)
    b = _check_arg(b)
    if abs(b - a) <= rtol * max(a, b):
        return exp_ei_deriv(0.5 * (a + b))
    return (exp_ei(b) - exp_ei(a)) / (b - a)


def exp_ei_dd2(a, b, c, rtol=1e-5):
    """Second divided difference of :func:`exp_ei` on three positive nodes.

    Symmetric in its arguments.  If all three nodes lie within ``rtol`` of
    each other the limit ``f''/2`` at their mean is used; pairwise coincidences
    fall through to the first-difference limit in :func:`exp_ei_dd1`.
    """
    x0, x1, x2 = sorted((_check_arg(a), _check_arg(b), _check_arg(c)))
    if x2 - x0 <= rtol * x2:
        return 0.5 * exp_ei_deriv((x0 + x1 + x2) / 3.0, order=2)
    return (exp_ei_dd1(x1, x2) - exp_ei_dd1(x0, x1)) / (x2 - x0)
