"""Shared numeric kernels.

Generalized binomials, forward and divided differences, Gregory
coefficients, Bernoulli numbers, integer zeta values, interpolation
polynomial evaluation, adaptive quadrature, and sequence extrapolation.
Everything here is scalar, pure, and deterministic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence


def gen_binomial(x: float, j: int) -> float:
    """Generalized binomial coefficient C(x, j) = x(x-1)...(x-j+1)/j!.

    Evaluated as a left-to-right product of (x - i)/(i + 1) factors so
    intermediate magnitudes stay balanced. C(x, 0) = 1 for every x.
    """
    if j < 0:
        raise ValueError("binomial order j must be >= 0")
    acc = 1.0
    for i in range(j):
        acc *= (x - i) / (i + 1)
    return acc


def forward_diff(g: Callable[[float], float], x: float, j: int) -> float:
    """Forward difference Delta^j g(x) = sum_i (-1)^(j-i) C(j,i) g(x+i).

    Direct binomial-weighted summation (compensated); j is capped at 12,
    which covers every Gregory-series truncation used downstream.
    """
    if j < 0 or j > 12:
        raise ValueError("difference order j must be in 0..12")
    if j == 0:
        return g(x)
    sign = -1.0 if j % 2 else 1.0
    terms = []
    for i in range(j + 1):
        terms.append(sign * math.comb(j, i) * g(x + i))
        sign = -sign
    return math.fsum(terms)


def divided_difference(f: Callable[[float], float], nodes: Sequence[float]) -> float:
    """Divided difference f[x_0, ..., x_k] via the Newton recurrence.

    Nodes must be pairwise distinct; the result is symmetric under node
    permutation.
    """
    pts = [float(t) for t in nodes]
    if not pts:
        raise ValueError("at least one node required")
    n = len(pts)
    seen = set()
    for t in pts:
        if t in seen:
            raise ValueError(f"duplicate node {t!r} in divided difference")
        seen.add(t)
    vals = [f(t) for t in pts]
    for level in range(1, n):
        vals = [
            (vals[i + 1] - vals[i]) / (pts[i + level] - pts[i])
            for i in range(n - level)
        ]
    return vals[0]


@lru_cache(maxsize=None)
def _gregory_fraction(j: int) -> Fraction:
    # G_j = (1/j!) * integral_0^1 t(t-1)...(t-j+1) dt, done in exact rationals
    poly = [Fraction(1)]
    for i in range(j):
        shifted = [Fraction(0)] + poly
        for k, c in enumerate(poly):
            shifted[k] -= c * i
        poly = shifted
    total = sum(c / (k + 1) for k, c in enumerate(poly))
    return total / math.factorial(j)


def gregory_coeff(j: int) -> float:
    """Gregory coefficient G_j = integral_0^1 C(t, j) dt.

    Computed once in exact rational arithmetic (polynomial expansion of
    the falling factorial, term-by-term integration) and converted to
    float; exactness avoids the cancellation that kills a naive float
    recurrence past j ~ 15.
    """
    if j < 1 or j > 30:
        raise ValueError("Gregory coefficient order must be in 1..30")
    return float(_gregory_fraction(j))


def gregory_coeff_fraction(j: int) -> Fraction:
    """Exact rational value of the Gregory coefficient G_j."""
    if j < 1 or j > 30:
        raise ValueError("Gregory coefficient order must be in 1..30")
    return _gregory_fraction(j)


@lru_cache(maxsize=None)
def _bernoulli_fraction(k: int) -> Fraction:
    if k == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(k):
        acc += math.comb(k + 1, j) * _bernoulli_fraction(j)
    return -acc / (k + 1)


def bernoulli_number(k: int) -> float:
    """Bernoulli number B_k in the B_1 = -1/2 convention.

    Standard recurrence sum_{j<=k} C(k+1, j) B_j = 0 in exact rationals,
    cached. B_k = 0 for odd k >= 3.
    """
    if k < 0 or k > 30:
        raise ValueError("Bernoulli index must be in 0..30")
    return float(_bernoulli_fraction(k))


def bernoulli_fraction(k: int) -> Fraction:
    """Exact rational value of the Bernoulli number B_k."""
    if k < 0 or k > 30:
        raise ValueError("Bernoulli index must be in 0..30")
    return _bernoulli_fraction(k)


@lru_cache(maxsize=None)
def _zeta_minus_1(n: int) -> float:
    # zeta(n) - 1 with full relative accuracy: direct sum over 2..K-1 plus
    # an Euler-Maclaurin tail for sum_{k>=K} k^(-n)
    if n < 2 or n > 60:
        raise ValueError("zeta argument must be an integer in 2..60")
    K = 32
    head = [float(k) ** (-n) for k in range(2, K)]
    tail = [float(K) ** (1 - n) / (n - 1), 0.5 * float(K) ** (-n)]
    rising = float(n)
    kpow = float(K) ** (-(n + 1))
    for j in range(1, 7):
        tail.append(bernoulli_number(2 * j) / math.factorial(2 * j) * rising * kpow)
        rising *= (n + 2 * j - 1) * (n + 2 * j)
        kpow /= float(K) * float(K)
    return math.fsum(head + tail)


def zeta_int(n: int) -> float:
    """Riemann zeta at an integer argument n in 2..60, |error| < 1e-14.

    Direct summation plus an Euler-Maclaurin tail correction; cached.
    """
    return 1.0 + _zeta_minus_1(n)


def zeta_int_minus_1(n: int) -> float:
    """zeta(n) - 1 without cancellation, accurate in relative terms.

    Needed wherever the alternating Fontana-style series is rearranged
    around the zeta(n) -> 1 limit.
    """
    return _zeta_minus_1(n)


@dataclass(frozen=True)
class QuadResult:
    """Outcome of one adaptive integration."""

    value: float
    err_estimate: float
    subdivisions: int


class QuadratureError(RuntimeError):
    """Raised when the panel budget is exhausted before reaching tol.

    Carries the best estimate found so far in the `best` attribute.
    """

    def __init__(self, message: str, best: "QuadResult | None" = None):
        super().__init__(message)
        self.best = best


# Gauss(7)/Kronrod(15) node-weight pair on [-1, 1]; positive abscissae only,
# the rule is symmetric. Gauss nodes sit at odd indices plus the center.
_XGK = (
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
)
_WGK = (
    0.022935322010529224,
    0.06309209262997855,
    0.10479001032225018,
    0.14065325971552592,
    0.1690047266392679,
    0.19035057806478542,
    0.20443294007529889,
    0.20948214108472782,
)
_WG = (
    0.1294849661688697,
    0.27970539148927664,
    0.3818300505051189,
    0.4179591836734694,
)

_PANEL_CAP = 10_000


def _panel(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    kron = _WGK[7] * fc
    gauss = _WG[3] * fc
    for i in range(7):
        t = h * _XGK[i]
        f1 = f(c - t)
        f2 = f(c + t)
        kron += _WGK[i] * (f1 + f2)
        if i % 2 == 1:
            gauss += _WG[i // 2] * (f1 + f2)
    kron *= h
    gauss *= h
    return kron, abs(kron - gauss) + 1e-300


def integrate(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-10
) -> QuadResult:
    """Adaptive quadrature of f over [a, b] to absolute tolerance tol.

    Globally adaptive bisection: each panel is scored by a fixed
    symmetric rule pair (embedded 7/15-point pair) and the worst panel
    is split first. Endpoints are never sampled, so mild endpoint
    behavior is tolerated, but genuine integrable singularities must go
    through integrate_singular. Raises QuadratureError (carrying the
    best estimate) if 10^4 panels do not reach tol.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integration endpoints must be finite")
    if not a < b:
        raise ValueError("integration requires a < b")
    if not (tol > 0):
        raise ValueError("tol must be positive")
    val, err = _panel(f, a, b)
    heap: list[tuple[float, float, float, float]] = [(-err, a, b, val)]
    total_err = err
    panels = 1
    while total_err > tol and panels < _PANEL_CAP:
        neg_err, pa, pb, _pval = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        v1, e1 = _panel(f, pa, mid)
        v2, e2 = _panel(f, mid, pb)
        heapq.heappush(heap, (-e1, pa, mid, v1))
        heapq.heappush(heap, (-e2, mid, pb, v2))
        total_err += e1 + e2 + neg_err
        panels += 1
        if panels % 64 == 0:
            total_err = math.fsum(-item[0] for item in heap)
    total_val = math.fsum(item[3] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    result = QuadResult(total_val, total_err, panels)
    if total_err > tol:
        raise QuadratureError(
            f"quadrature stalled at err_estimate={total_err:.3e} > tol={tol:.3e} "
            f"after {panels} panels",
            best=result,
        )
    return result


def integrate_singular(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    end: str = "left",
) -> QuadResult:
    """Integrate f over [a, b] with an integrable singularity at one end.

    Substitutes t = a + u^2 (end="left") or t = b - u^2 (end="right"),
    which regularizes logarithmic and inverse-square-root endpoint
    behavior, then delegates to integrate.
    """
    if not a < b:
        raise ValueError("integration requires a < b")
    w = math.sqrt(b - a)
    if end == "left":
        res = integrate(lambda u: 2.0 * u * f(a + u * u), 0.0, w, tol)
        return res
    if end == "right":
        res = integrate(lambda u: 2.0 * u * f(b - u * u), 0.0, w, tol)
        return res
    raise ValueError("end must be 'left' or 'right'")


def interp_poly_eval(
    g: Callable[[float], float], a: float, p: int, x: float
) -> float:
    """Interpolating polynomial of g at nodes a, a+1, ..., a+p-1, at x.

    Newton form with unit-spaced nodes (level-k divided differences
    divide by k); exact for polynomials of degree < p and reproduces the
    node values to roundoff.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    level = [g(a + i) for i in range(p)]
    coeffs = [level[0]]
    for k in range(1, p):
        level = [(level[i + 1] - level[i]) / k for i in range(len(level) - 1)]
        coeffs.append(level[0])
    acc = coeffs[-1]
    for k in range(p - 2, -1, -1):
        acc = coeffs[k] + (x - (a + k)) * acc
    return acc


def richardson_extrapolate(
    snapshots: Sequence[float], ratio: float = 2.0
) -> tuple[float, float]:
    """Accelerate snapshots S(h), S(h/ratio), S(h/ratio^2), ...

    Assumes the error expands in integer powers of h. Builds the
    classical triangular table and returns the diagonal entry with the
    smallest consecutive-diagonal difference, together with that
    difference as the error estimate; best-tracking keeps the result
    stable when later rows hit a roundoff floor.
    """
    seq = list(snapshots)
    if not seq:
        raise ValueError("at least one snapshot required")
    table = [[seq[0]]]
    best = seq[0]
    besterr = math.inf
    for s in seq[1:]:
        row = [s]
        prev = table[-1]
        for j in range(len(prev)):
            fac = ratio ** (j + 1)
            row.append((fac * row[j] - prev[j]) / (fac - 1.0))
        err = abs(row[-1] - prev[-1])
        if err < besterr:
            best, besterr = row[-1], err
        table.append(row)
    return best, besterr
