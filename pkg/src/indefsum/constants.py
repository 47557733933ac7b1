"""Asymptotic constant sigma[g], generalized Euler constant gamma[g].

sigma[g] is the definite integral of Sigma g over [1, 2]; gamma[g] peels
off the Gregory head sum_{j<=p} G_j Delta^{j-1} g(1).  Both get an
independent cross-check route: a piecewise interpolation-error integral
for gamma, and a Bernoulli-kernel integral representation for the
x ln x - x + ln(2 pi)/2 entry's sigma.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .numerics import gregory_coeff, forward_diff, integrate, interp_poly_eval, \
    richardson_extrapolate
from .shape import ShapeError, decays_at
from .sigma import GFunction, sigma_eulerian


@dataclass(frozen=True)
class ConstantsReport:
    p: int
    sigma: float
    gamma_gen: float
    err: float
    method: str


def asymptotic_constant(g: GFunction, p: int | None = None, tol: float = 1e-11) -> float:
    """sigma[g] = integral_1^2 Sigma g(t) dt, cached on g once computed.

    The integrand is the Eulerian-series evaluation of Sigma g at a
    tolerance one order below the quadrature target, so the quadrature
    error estimate dominates.  Idempotent: repeated calls return the
    cached value.
    """
    if g.sigma_constant is not None:
        return g.sigma_constant
    if tol < 1e-11:
        raise ValueError("tol must be >= 1e-11")
    if p is None:
        p = g.p
    res = integrate(lambda t: sigma_eulerian(g, p, t, tol=1e-12).value, 1.0, 2.0, tol)
    return g.cache_sigma_constant(res.value)


def _gregory_head(g, p: int, x: float = 1.0) -> float:
    return math.fsum(gregory_coeff(j) * forward_diff(g, x, j - 1) for j in range(1, p + 1))


def euler_constant_gen(g: GFunction, p: int | None = None, unsafe: bool = False) -> float:
    """gamma[g] = sigma[g] - sum_{j=1}^p G_j Delta^{j-1} g(1).

    The constant is only meaningful at the minimal admissible p; a
    non-minimal p silently shifts the value, so it is rejected unless
    the caller passes unsafe=True.
    """
    if p is None:
        p = g.p
    if not unsafe:
        if p > 0 and decays_at(g, p - 1):
            raise ShapeError(
                f"{g.name}: p = {p} is not minimal (differences already decay at {p - 1}); "
                "pass unsafe=True to override"
            )
    return asymptotic_constant(g, p) - _gregory_head(g, p)


def gamma_piecewise_interp(g, p: int, N: int = 10_000) -> float:
    """gamma[g] as the accumulated interpolation-error integral.

    On each [k, k+1] the degree-p interpolant of g at nodes k..k+p is
    integrated against g; partial sums at N/4, N/2, N are extrapolated
    to absorb the O(1/N) tail.  Independent of the sigma[g] route: no
    Sigma evaluation is involved.
    """
    if N < 10:
        raise ValueError("N must be >= 10")
    marks = sorted({max(1, N // 4), max(2, N // 2), N})
    partials = []
    acc = []
    for k in range(1, N + 1):
        piece = integrate(
            lambda t: interp_poly_eval(g, float(k), p + 1, t) - g(t),
            float(k), float(k + 1), tol=1e-13,
        )
        acc.append(piece.value)
        if k in marks:
            partials.append(math.fsum(acc))
    value, _ = richardson_extrapolate(partials)
    return value


def b2_fractional(t: float) -> float:
    """Second Bernoulli polynomial at the fractional part of t."""
    u = t - math.floor(t)
    return u * u - u + 1.0 / 6.0


def sigma_integral_rep_psi2(N: int = 2048, with_partials: bool = False):
    """sigma for g(x) = x ln x - x + ln(2 pi)/2 by the Bernoulli-kernel route.

    sigma = g(1)/2 - (1/2) integral_1^inf B_2({t})/t dt, the improper
    integral summed over unit intervals with geometric extrapolation.
    Partial values decrease monotonically to the limit (each unit
    integral is positive).  Returns the extrapolated value, or
    (value, partials) when with_partials is set.
    """
    g1 = 0.5 * math.log(2.0 * math.pi) - 1.0
    pieces = []
    partials = []
    mark = 8
    k = 1
    while k <= N:
        piece = integrate(lambda u, c=float(k): (u * u - u + 1.0 / 6.0) / (c + u),
                          0.0, 1.0, tol=1e-14)
        pieces.append(piece.value)
        if k == mark or k == N:
            partials.append(0.5 * g1 - 0.5 * math.fsum(pieces))
            mark *= 2
        k += 1
    value, _ = richardson_extrapolate(partials)
    if with_partials:
        return value, partials
    return value


def fontana_partial(g, x: float = 1.0, N: int = 10) -> list[float]:
    """Running Gregory-coefficient sums S_n = sum_{j<=n} G_j Delta^{j-1} g(x).

    At x = 1 these converge to sigma[g]; the classical g = 1/x case
    reproduces the Fontana-Mascheroni series for Euler's constant.
    """
    if not 1 <= N <= 12:
        raise ValueError("N must be in 1..12")
    terms = [gregory_coeff(n) * forward_diff(g, x, n - 1) for n in range(1, N + 1)]
    return list(itertools.accumulate(terms))


def constants_report(g: GFunction, p: int | None = None, tol: float = 1e-11) -> ConstantsReport:
    """Assemble (p, sigma, gamma, err) with the method that produced sigma."""
    if p is None:
        p = g.p
    if g.sigma_constant is not None:
        sig = g.sigma_constant
        err = tol
        method = "cached"
    else:
        res = integrate(lambda t: sigma_eulerian(g, p, t, tol=1e-12).value, 1.0, 2.0, tol)
        sig = g.cache_sigma_constant(res.value)
        err = res.err_estimate + 1e-12
        method = "eulerian-quadrature"
    gam = sig - _gregory_head(g, p)
    return ConstantsReport(p=p, sigma=sig, gamma_gen=gam, err=err, method=method)
