"""Principal indefinite sums Sigma g and their derivatives.

Three evaluation strategies, each returning a SigmaResult:

  sigma_direct    the defining Gauss-style limit f_pn along n = n0 * 2^k
                  with Richardson extrapolation of the snapshots;
  sigma_eulerian  the additive Euler-product series with tail
                  extrapolation;
  sigma_gregory   shift to x+N >= 30 and truncate the Gregory series
                  there (needs the function's sigma constant).

sigma() dispatches between them; sigma_deriv() differentiates the
shifted Gregory form (or the Eulerian series) termwise.

All strategies normalize Sigma g(1) = 0. For x > 2 the direct and
Eulerian strategies apply exact argument reduction through the
difference equation Sigma g(x) = Sigma g(x - m) + sum_{k<m} g(x - m + k),
evaluating the series at x - m in (1, 2] where their convergence is
clean, then adding the finite sum back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .exprlang import Jet
from .numerics import (
    forward_diff,
    gen_binomial,
    gregory_coeff,
    integrate,
    richardson_extrapolate,
)

__all__ = [
    "GFunction",
    "SigmaResult",
    "MissingSigmaConstant",
    "f_pn",
    "sigma_direct",
    "sigma_eulerian",
    "sigma_gregory",
    "sigma",
    "sigma_deriv",
    "integral_from_1",
]


class MissingSigmaConstant(RuntimeError):
    """Gregory strategy invoked before sigma[g] was computed and cached."""


@dataclass(eq=False)
class GFunction:
    """A function g with the metadata the engine needs.

    eval must be finite on (0, inf); jet(x, r) returns Taylor data of
    order r (r <= 8 expected); antideriv, when present, is the definite
    integral from 1, i.e. antideriv(x) = integral_1^x g(t) dt; p and
    shape certify g in D^p intersect K^p (caller's responsibility,
    normally via shape.classify or catalog metadata).
    """

    eval: Callable[[float], float]
    jet: Optional[Callable[[float, int], Jet]]
    antideriv: Optional[Callable[[float], float]]
    p: int
    shape: str
    name: str
    _sigma_cache: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        if self.shape not in ("convex", "concave"):
            raise ValueError("shape must be 'convex' or 'concave'")
        if self.p < 0:
            raise ValueError("p must be >= 0")

    def __call__(self, x: float) -> float:
        return self.eval(x)

    @property
    def sigma_constant(self) -> Optional[float]:
        return self._sigma_cache

    def cache_sigma_constant(self, value: float) -> float:
        # idempotent fill: first write wins, identical rewrites are no-ops
        if self._sigma_cache is None:
            self._sigma_cache = value
        return self._sigma_cache

    def deriv(self, x: float, r: int) -> float:
        """g^(r)(x) recovered from the jet."""
        if r == 0:
            return self.eval(x)
        if self.jet is None:
            raise ValueError(f"{self.name}: no jet available for derivatives")
        return self.jet(x, r).derivative(r)


@dataclass(frozen=True)
class SigmaResult:
    value: float
    err_estimate: float
    strategy: str  # direct | eulerian | gregory
    terms_used: int


def integral_from_1(g: GFunction, y: float, tol: float = 1e-12) -> float:
    """integral_1^y g(t) dt, by closed form when available else quadrature."""
    if g.antideriv is not None:
        return g.antideriv(y)
    if y == 1.0:
        return 0.0
    if y > 1.0:
        return integrate(g.eval, 1.0, y, tol).value
    return -integrate(g.eval, y, 1.0, tol).value


def _edge_diffs(window: list[float]) -> list[float]:
    # forward differences anchored at the window's left end, orders 0..len-1
    out = [window[0]]
    level = window
    for _ in range(len(window) - 1):
        level = [level[i + 1] - level[i] for i in range(len(level) - 1)]
        out.append(level[0])
    return out


def _reduce_argument(g: GFunction, x: float) -> tuple[float, float]:
    # for x > 2 rewrite Sigma g(x) = Sigma g(xr) + sum_{k<m} g(xr+k),
    # xr = x - m in (1, 2]; exact difference-equation bookkeeping
    if x <= 2.0:
        return x, 0.0
    m = math.ceil(x) - 2
    xr = x - m
    shift = math.fsum(g.eval(xr + k) for k in range(m))
    return xr, shift


def f_pn(g: GFunction, p: int, n: int, x: float) -> float:
    """The defining approximant f^p_n[g](x), evaluated as a finite sum.

    Terms are arranged pairwise, g(k) - g(x+k), and summed with
    compensation so the large-n cancellation between the two sums does
    not dominate the roundoff.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not x > 0.0:
        raise ValueError("x must be positive")
    terms = [-g.eval(x)]
    for k in range(1, n):
        terms.append(g.eval(float(k)) - g.eval(x + k))
    if p > 0:
        window = [g.eval(float(n + i)) for i in range(p)]
        diffs = _edge_diffs(window)
        for j in range(1, p + 1):
            terms.append(gen_binomial(x, j) * diffs[j - 1])
    return math.fsum(terms)


_DIRECT_N0 = 8
_DIRECT_CAP = 1 << 17
_EULERIAN_N0 = 8
_EULERIAN_CAP = 1 << 16
_MIN_SNAPSHOTS = 4


def sigma_direct(g: GFunction, p: int, x: float, tol: float = 1e-10) -> SigmaResult:
    """Sigma g(x) as the extrapolated limit of f^p_n[g](x).

    Snapshots along n = 8 * 2^k feed Richardson extrapolation; the last
    consecutive-diagonal difference is the error estimate. If the
    budget runs out before tol is met, the best value is returned with
    err_estimate > tol as the flag (no exception).
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    if tol < 1e-12:
        raise ValueError("tol must be >= 1e-12")
    xr, shift = _reduce_argument(g, x)
    pair_terms = [-g.eval(xr)]
    snapshots: list[float] = []
    k_next = 1
    n = _DIRECT_N0
    while n <= _DIRECT_CAP:
        while k_next < n:
            pair_terms.append(g.eval(float(k_next)) - g.eval(xr + k_next))
            k_next += 1
        tail = []
        if p > 0:
            window = [g.eval(float(n + i)) for i in range(p)]
            diffs = _edge_diffs(window)
            tail = [gen_binomial(xr, j) * diffs[j - 1] for j in range(1, p + 1)]
        snapshots.append(math.fsum(pair_terms + tail))
        if len(snapshots) >= _MIN_SNAPSHOTS:
            value, err = richardson_extrapolate(snapshots)
            if err < tol:
                return SigmaResult(value + shift, err, "direct", n)
        n *= 2
    value, err = richardson_extrapolate(snapshots)
    return SigmaResult(value + shift, err, "direct", n // 2)


def sigma_eulerian(g: GFunction, p: int, x: float, tol: float = 1e-10) -> SigmaResult:
    """Sigma g(x) by the Eulerian series.

    -g(x) + sum_{j=1..p} C(x,j) Delta^{j-1} g(1)
          - sum_{n>=1} (g(x+n) - sum_{j=0..p} C(x,j) Delta^j g(n)).

    A rolling window over g(n..n+p) keeps the cost at two evaluations
    per term; partial sums at N = 8 * 2^k feed the same extrapolation
    as sigma_direct.
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    if tol < 1e-12:
        raise ValueError("tol must be >= 1e-12")
    xr, shift = _reduce_argument(g, x)
    b = [gen_binomial(xr, j) for j in range(p + 1)]
    head = [-g.eval(xr)]
    if p > 0:
        first = [g.eval(float(1 + i)) for i in range(p)]
        fdiffs = _edge_diffs(first)
        head += [b[j] * fdiffs[j - 1] for j in range(1, p + 1)]
    window = [g.eval(float(1 + i)) for i in range(p + 1)]
    terms: list[float] = []
    snapshots: list[float] = []
    next_snap = _EULERIAN_N0
    n = 1
    while n <= _EULERIAN_CAP:
        diffs = _edge_diffs(window)
        rho = g.eval(xr + n) - math.fsum(b[j] * diffs[j] for j in range(p + 1))
        terms.append(-rho)
        if n == next_snap:
            snapshots.append(math.fsum(head + terms))
            next_snap *= 2
            if len(snapshots) >= _MIN_SNAPSHOTS:
                value, err = richardson_extrapolate(snapshots)
                if err < tol:
                    return SigmaResult(value + shift, err, "eulerian", n)
        window.pop(0)
        window.append(g.eval(float(n + 1 + p)))
        n += 1
    if len(snapshots) >= 2:
        value, err = richardson_extrapolate(snapshots)
    else:
        value, err = math.fsum(head + terms), math.inf
    return SigmaResult(value + shift, err, "eulerian", n - 1)


def sigma_gregory(
    g: GFunction,
    p: int,
    x: float,
    N: Optional[int] = None,
    J: int = 8,
) -> SigmaResult:
    """Sigma g(x) by shift plus truncated Gregory series.

    value = [sigma[g] + integral_1^{x+N} g - sum_{n=1..J} G_n
    Delta^{n-1} g(x+N)] - sum_{k<N} g(x+k), with N defaulting to the
    smallest shift putting x+N >= 30. err_estimate is the magnitude of
    the last retained Gregory term |G_J Delta^{J-1} g(x+N)|, a
    deliberately conservative omitted-term heuristic (one order down).
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    if J < 1 or J > 12:
        raise ValueError("Gregory order J must be in 1..12")
    if g.sigma_constant is None:
        raise MissingSigmaConstant(
            f"sigma[{g.name}] not cached; compute it first "
            "(constants.asymptotic_constant)"
        )
    if N is None:
        N = max(0, math.ceil(30.0 - x))
    if N < 0:
        raise ValueError("shift N must be >= 0")
    y = x + N
    window = [g.eval(y + i) for i in range(J)]
    diffs = _edge_diffs(window)
    gregory_sum = math.fsum(gregory_coeff(nn) * diffs[nn - 1] for nn in range(1, J + 1))
    head = g.sigma_constant + integral_from_1(g, y) - gregory_sum
    shift_sum = math.fsum(g.eval(x + k) for k in range(N))
    err = abs(gregory_coeff(J) * diffs[J - 1])
    return SigmaResult(head - shift_sum, err, "gregory", J + N)


def sigma(g: GFunction, x: float, tol: float = 1e-10) -> SigmaResult:
    """Strategy dispatcher for Sigma g(x).

    Gregory when sigma[g] is cached and jets exist (fast path), else
    the Eulerian series, else the direct limit.
    """
    if g.sigma_constant is not None and g.jet is not None:
        return sigma_gregory(g, g.p, x)
    try:
        return sigma_eulerian(g, g.p, x, tol)
    except (ValueError, ArithmeticError):
        return sigma_direct(g, g.p, x, tol)


def _binom_jet(x: float, j: int, r: int) -> list[float]:
    # Taylor coefficients in t of C(x + t, j), truncated at order r
    acc = [0.0] * (r + 1)
    acc[0] = 1.0
    for i in range(j):
        fac = [(x - i), 1.0] + [0.0] * max(0, r - 1)
        fac = fac[: r + 1]
        new = [0.0] * (r + 1)
        for a in range(r + 1):
            if acc[a] == 0.0:
                continue
            for bidx in range(min(2, r + 1 - a)):
                new[a + bidx] += acc[a] * fac[bidx]
        acc = new
    inv = 1.0 / math.factorial(j)
    return [c * inv for c in acc]


def sigma_deriv(
    g: GFunction,
    p: int,
    x: float,
    r: int,
    strategy: str = "gregory",
    tol: float = 1e-10,
    J: int = 10,
) -> SigmaResult:
    """r-th derivative of Sigma g at x, 0 <= r <= 4 (r=0 delegates).

    Default path differentiates the shifted Gregory form: the sigma
    constant drops out, leaving

      D^r Sigma g(x) = g^(r-1)(x+N) - sum_{n=1..J} G_n Delta^{n-1}
                       g^(r)(x+N) - sum_{k<N} g^(r)(x+k).

    strategy="eulerian" differentiates the Eulerian series termwise
    instead (with d/dx of C(x, j) done by polynomial jet arithmetic);
    it is slower and kept as an independent cross-check route.
    """
    if r == 0:
        return sigma(g, x, tol)
    if r < 0 or r > 4:
        raise ValueError("derivative order r must be in 0..4")
    if not x > 0.0:
        raise ValueError("x must be positive")
    if g.jet is None:
        raise ValueError(f"{g.name}: derivatives require jets")
    if strategy == "gregory":
        N = max(0, math.ceil(30.0 - x))
        y = x + N
        dr = [g.jet(y + i, r).derivative(r) for i in range(J)]
        diffs = _edge_diffs(dr)
        gsum = math.fsum(
            gregory_coeff(nn) * diffs[nn - 1] for nn in range(1, J + 1)
        )
        lead = g.jet(y, max(1, r - 1)).derivative(r - 1)
        shift_sum = math.fsum(
            g.jet(x + k, r).derivative(r) for k in range(N)
        )
        err = abs(gregory_coeff(J) * diffs[J - 1])
        return SigmaResult(lead - gsum - shift_sum, err, "gregory", J + N)
    if strategy != "eulerian":
        raise ValueError("strategy must be 'gregory' or 'eulerian'")

    fact_r = math.factorial(r)

    def dr_of(y: float) -> float:
        return g.jet(y, r).derivative(r)

    if x > 2.0:
        m = math.ceil(x) - 2
        xr = x - m
        shift = math.fsum(dr_of(xr + k) for k in range(m))
    else:
        xr, shift = x, 0.0
    # C^(r)(xr, j) for j = 0..p from polynomial jets
    cr = [fact_r * _binom_jet(xr, j, r)[r] for j in range(p + 1)]
    head = [-dr_of(xr)]
    if p > 0:
        first = [g.eval(float(1 + i)) for i in range(p)]
        fdiffs = _edge_diffs(first)
        head += [cr[j] * fdiffs[j - 1] for j in range(1, p + 1)]
    window = [g.eval(float(1 + i)) for i in range(p + 1)]
    terms: list[float] = []
    snapshots: list[float] = []
    next_snap = _EULERIAN_N0
    n = 1
    while n <= _EULERIAN_CAP:
        diffs = _edge_diffs(window)
        rho_r = dr_of(xr + n) - math.fsum(cr[j] * diffs[j] for j in range(p + 1))
        terms.append(-rho_r)
        if n == next_snap:
            snapshots.append(math.fsum(head + terms))
            next_snap *= 2
            if len(snapshots) >= _MIN_SNAPSHOTS:
                value, err = richardson_extrapolate(snapshots)
                if err < tol:
                    return SigmaResult(value + shift, err, "eulerian", n)
        window.pop(0)
        window.append(g.eval(float(n + 1 + p)))
        n += 1
    value, err = richardson_extrapolate(snapshots)
    return SigmaResult(value + shift, err, "eulerian", n - 1)
