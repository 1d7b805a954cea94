"""Zeroth-order Bessel function of the first kind, self-contained.

Power series on |x| <= 8; Cephes-style Hankel expansion with rational
coefficients beyond (abs error ~4e-16 there). No scipy dependency.
"""

from __future__ import annotations

import math

_SQ2OPI = 7.9788456080286535587989e-1  # sqrt(2/pi)
_PIO4 = 7.85398163397448309616e-1

# Hankel-expansion rational fits (Cephes bessj0, double precision)
_PP = [
    7.96936729297347051624e-4,
    8.28352392107440799803e-2,
    1.23953371646414299388e0,
    5.44725003058768775090e0,
    8.74716500199817011941e0,
    5.30324038235394892183e0,
    9.99999999999999997821e-1,
]
_PQ = [
    9.24408810558863637013e-4,
    8.56288474354474431428e-2,
    1.25352743901058953537e0,
    5.47097740330417105182e0,
    8.76190883237069594232e0,
    5.30605288235394617618e0,
    1.00000000000000000218e0,
]
_QP = [
    -1.13663838898469149931e-2,
    -1.28252718670509318512e0,
    -1.95539544257735972385e1,
    -9.32060152123768231369e1,
    -1.77681167980488050595e2,
    -1.47077505154951170175e2,
    -5.14105326766599330220e1,
    -6.05014350600728481186e0,
]
_QQ = [
    6.43178256118178023184e1,
    8.56430025976980587198e2,
    3.88240183605401609683e3,
    7.24046774195652478189e3,
    5.93072701187316984827e3,
    2.06209331660327847417e3,
    2.42005740240291393179e2,
]


def _polevl(x: float, coef: list[float]) -> float:
    ans = coef[0]
    for c in coef[1:]:
        ans = ans * x + c
    return ans


def _p1evl(x: float, coef: list[float]) -> float:
    # monic variant: leading coefficient 1 is implicit
    ans = x + coef[0]
    for c in coef[1:]:
        ans = ans * x + c
    return ans


def _series(x: float) -> float:
    # sum_k (-1)^k (x/2)^{2k} / (k!)^2 ; converges fast for |x| <= 8
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while abs(term) > 1e-18 * max(1.0, abs(total)):
        k += 1
        term *= -q / (k * k)
        total += term
        if k > 60:  # unreachable for |x| <= 8
            break
    return total


def bessel_j0(x: float) -> float:
    """J0(x), absolute error below 1e-12 on |x| <= 20 (and well beyond)."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"bessel_j0 requires finite input, got {x!r}")
    ax = abs(x)
    if ax <= 8.0:
        return _series(ax)
    w = 5.0 / ax
    z = 25.0 / (ax * ax)
    p = _polevl(z, _PP) / _polevl(z, _PQ)
    q = _polevl(z, _QP) / _p1evl(z, _QQ)
    xn = ax - _PIO4
    p = p * math.cos(xn) - w * q * math.sin(xn)
    return p * _SQ2OPI / math.sqrt(ax)
