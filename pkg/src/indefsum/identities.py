"""Residual evaluators for the identity and inequality families.

Each function evaluates both sides of one displayed identity with the
engine and returns the residual (or both sides, where the verification
needs them).  The psi_-2 specializations fix g(x) = x ln x - x +
ln(2 pi)/2 and compare the normalized Sigma g plus its offset against
closed forms built from the named constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .numerics import gen_binomial, integrate, integrate_singular, zeta_int, \
    zeta_int_minus_1
from .sigma import GFunction, integral_from_1, sigma
from .constants import asymptotic_constant
from .asymptotics import binet
from .catalog import builtin, named_constant, reference_digamma
from .exprlang import Jet

# unique positive zero of the digamma function; gates the Gautschi chain
GAUTSCHI_X0 = 1.461632144968362


@dataclass(frozen=True)
class ResidualReport:
    """One identity's evaluation grid with residuals.

    points and residuals are parallel lists; max_abs is the largest
    |residual|.  sides, when present, carries (lhs, rhs) pairs for
    log-level debugging of failures.
    """

    identity: str
    points: list
    residuals: list[float]
    max_abs: float
    sides: Optional[list] = field(default=None)


def make_report(identity: str, points: list, residuals: list[float],
                sides: Optional[list] = None) -> ResidualReport:
    if len(points) != len(residuals):
        raise ValueError("points and residuals must have equal length")
    max_abs = max((abs(r) for r in residuals), default=0.0)
    return ResidualReport(identity=identity, points=points, residuals=residuals,
                          max_abs=max_abs, sides=sides)


def _psi2_entry():
    entry = builtin("psi2g")
    asymptotic_constant(entry.g, entry.g.p)
    return entry


def _ln_entry():
    entry = builtin("ln")
    asymptotic_constant(entry.g, entry.g.p)
    return entry


def psi2_value(x: float) -> float:
    """Engine psi_-2(x): normalized Sigma g plus the ln(2 pi)/2 offset."""
    entry = _psi2_entry()
    return sigma(entry.g, x).value + entry.offset


def lngamma_value(x: float) -> float:
    """Engine log-gamma, i.e. Sigma ln."""
    return sigma(_ln_entry().g, x).value


# ---------------------------------------------------------------------------
# Raabe

def raabe_sides(g: GFunction, p: int | None = None, x: float = 1.0) -> tuple[float, float]:
    """(integral_x^{x+1} Sigma g, sigma[g] + integral_1^x g)."""
    if p is None:
        p = g.p
    asymptotic_constant(g, p)
    lhs = integrate(lambda t: sigma(g, t).value, x, x + 1.0, tol=1e-10).value
    rhs = g.sigma_constant + integral_from_1(g, x)
    return lhs, rhs


def raabe_residual(g: GFunction, p: int | None = None, x: float = 1.0) -> float:
    lhs, rhs = raabe_sides(g, p, x)
    return lhs - rhs


# ---------------------------------------------------------------------------
# Multiplication

_scaled_cache: dict = {}


def _scaled_entry(g: GFunction, m: int) -> GFunction:
    """g_m(x) = g(x/m), sharing p and shape with g (dilation preserves both)."""
    if m == 1:
        return g
    key = (id(g), m)
    hit = _scaled_cache.get(key)
    if hit is not None and hit[0] is g:
        return hit[1]

    fm = float(m)

    def eval_m(t: float) -> float:
        return g.eval(t / fm)

    jet_m = None
    if g.jet is not None:
        def jet_m(x: float, r: int) -> Jet:
            base = g.jet(x / fm, r)
            return Jet(center=x,
                       coeffs=tuple(c / fm ** k for k, c in enumerate(base.coeffs)))

    antideriv_m = None
    if g.antideriv is not None:
        def antideriv_m(y: float) -> float:
            return fm * (g.antideriv(y / fm) - g.antideriv(1.0 / fm))

    gm = GFunction(eval=eval_m, jet=jet_m, antideriv=antideriv_m,
                   p=g.p, shape=g.shape, name=f"{g.name}(x/{m})")
    _scaled_cache[key] = (g, gm)
    return gm


def mult_sides(g: GFunction, p: int | None = None, m: int = 1,
               x: float = 1.0) -> tuple[float, float]:
    """Both sides of the multiplication identity.

    lhs = sum_{j<m} Sigma g((x+j)/m)
    rhs = Sigma g_m(x) + m sigma[g] - sigma[g_m] - integral_1^m g_m
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if p is None:
        p = g.p
    sig_g = asymptotic_constant(g, p)
    lhs = math.fsum(sigma(g, (x + j) / m).value for j in range(m))
    gm = _scaled_entry(g, m)
    sig_gm = asymptotic_constant(gm, p)
    if m == 1:
        integral = 0.0
    elif gm.antideriv is not None:
        integral = gm.antideriv(float(m))
    else:
        integral = integrate(gm.eval, 1.0, float(m), tol=1e-12).value
    rhs = sigma(gm, x).value + m * sig_g - sig_gm - integral
    return lhs, rhs


def mult_residual(g: GFunction, p: int | None = None, m: int = 1,
                  x: float = 1.0) -> float:
    lhs, rhs = mult_sides(g, p, m, x)
    return lhs - rhs


def mult_finite_sum_psi2(m: int) -> tuple[float, float]:
    """(engine sum_{j=1}^{m-1} psi_-2(j/m), its closed form).

    Closed form: -(ln m)/(12 m) + (m-1) ln(2 pi)/4 + (m - 1/m) ln A.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    engine = math.fsum(psi2_value(j / m) for j in range(1, m))
    closed = (
        -math.log(m) / (12.0 * m)
        + 0.25 * (m - 1) * named_constant("ln_2pi")
        + (m - 1.0 / m) * named_constant("ln_glaisher")
    )
    return engine, closed


def mult_scaling_limit_psi2(x: float, m_list) -> list[float]:
    """Sequence psi_-2(m x)/m^2 - (x^2/2) ln m; tends to (x^2/2) ln x - 3 x^2/4."""
    if x <= 0.0:
        raise ValueError("x must be positive")
    return [psi2_value(m * x) / (m * m) - 0.5 * x * x * math.log(m) for m in m_list]


# ---------------------------------------------------------------------------
# Webster functional equation

def webster_sides(m: int, x: float) -> tuple[float, float]:
    """(sum_{j<m} f(x + j/m), g(x)) for f(t) = psi_-2(t + 1/m) - psi_-2(t)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    entry = _psi2_entry()
    lhs = math.fsum(
        psi2_value(x + j / m + 1.0 / m) - psi2_value(x + j / m) for j in range(m)
    )
    return lhs, entry.g.eval(x)


def webster_check(m: int, x: float) -> float:
    lhs, rhs = webster_sides(m, x)
    return lhs - rhs


# ---------------------------------------------------------------------------
# Wallis

def wallis_partial_psi2(n: int) -> tuple[float, float]:
    """Normalized alternating partial sums of g and psi_-2 up to 2n.

    first  = (n + 1/4) ln n - n(1 - ln 2) + sum_{k<=2n} (-1)^{k-1} g(k)
    second = n^2 ln(2n) - 3n^2/2 + n ln(2 pi)/2 - (ln n)/12
             + sum_{k<=2n} (-1)^{k-1} psi_-2(k)
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    entry = _psi2_entry()
    g = entry.g.eval
    h1 = (n + 0.25) * math.log(n) - n * (1.0 - math.log(2.0))
    h2 = (
        n * n * math.log(2.0 * n)
        - 1.5 * n * n
        + 0.5 * n * math.log(2.0 * math.pi)
        - math.log(n) / 12.0
    )
    sign = 1.0
    gsum = []
    psum = []
    for k in range(1, 2 * n + 1):
        gsum.append(sign * g(float(k)))
        psum.append(sign * psi2_value(float(k)))
        sign = -sign
    return h1 + math.fsum(gsum), h2 + math.fsum(psum)


def wallis_extrapolated(n: int) -> tuple[float, float]:
    """One Richardson step over (n/2, n); removes the O(1/n) error term."""
    if n < 4:
        raise ValueError("n must be >= 4")
    half = wallis_partial_psi2(n // 2)
    full = wallis_partial_psi2(n)
    return 2.0 * full[0] - half[0], 2.0 * full[1] - half[1]


# ---------------------------------------------------------------------------
# Reflection

def _lnsin_integral(x: float) -> float:
    # integral_0^x ln sin(pi t) dt with the log singularity at 0 regularized
    f = lambda t: math.log(math.sin(math.pi * t))
    if x <= 0.5:
        return integrate_singular(f, 0.0, x, tol=1e-11, end="left").value
    head = integrate_singular(f, 0.0, 0.5, tol=1e-11, end="left").value
    return head + integrate(f, 0.5, x, tol=1e-11).value


def reflection_sides_psi2(x: float) -> tuple[float, float]:
    """(psi_-2(x) - psi_-2(1-x), x ln pi - ln(2 pi)/2 - integral_0^x ln sin(pi t) dt)."""
    if not 0.0 < x < 1.0:
        raise ValueError("x must be in (0, 1)")
    lhs = psi2_value(x) - psi2_value(1.0 - x)
    rhs = (
        x * named_constant("ln_pi")
        - 0.5 * named_constant("ln_2pi")
        - _lnsin_integral(x)
    )
    return lhs, rhs


def reflection_residual_psi2(x: float) -> float:
    lhs, rhs = reflection_sides_psi2(x)
    return lhs - rhs


# ---------------------------------------------------------------------------
# Taylor and Euler-type series

def taylor_psi2(x: float, N: int = 60) -> float:
    """Partial Taylor sum of psi_-2(1+x) about 0.

    ln(2 pi)/2 - gamma x^2/2 + sum_{n=3}^N (-1)^(n-1) zeta(n-1)/(n(n-1)) x^n.
    zeta(n-1) is replaced by 1 beyond the exact-table range; the swap is
    below 1e-18 for n-1 > 60.
    """
    if abs(x) > 0.75:
        raise ValueError("|x| must be <= 0.75")
    if not 3 <= N <= 200:
        raise ValueError("N must be in 3..200")
    terms = [0.5 * named_constant("ln_2pi"),
             -0.5 * named_constant("euler_gamma") * x * x]
    for n in range(3, N + 1):
        z = zeta_int(n - 1) if n - 1 <= 60 else 1.0
        terms.append((-1.0) ** (n - 1) * z / (n * (n - 1)) * x ** n)
    return math.fsum(terms)


def euler_series_closed() -> float:
    """gamma/6 - 3/4 + ln(2 pi)/4 + ln A, from the named constants."""
    return (
        named_constant("euler_gamma") / 6.0
        - 0.75
        + 0.25 * named_constant("ln_2pi")
        + named_constant("ln_glaisher")
    )


def euler_series_analogue(N: int, accelerated: bool = True) -> float:
    """Partial sum of sum_{n>=2} (-1)^n zeta(n)/(n(n+1)(n+2)).

    The raw alternating sum converges like 2^-N, far too slowly for
    twelve digits by N = 50; the accelerated form splits zeta(n) =
    1 + (zeta(n)-1), sums the pure-1 part in closed form (17/12 - 2 ln 2)
    and keeps the fast (zeta(n)-1) remainder.  Terms beyond the zeta
    table contribute below 1e-18 and are dropped.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    if not accelerated:
        if N > 60:
            raise ValueError("raw mode is limited to N <= 60")
        return math.fsum(
            (-1.0) ** n * zeta_int(n) / (n * (n + 1) * (n + 2))
            for n in range(2, N + 1)
        )
    base = 17.0 / 12.0 - 2.0 * math.log(2.0)
    tail = [
        (-1.0) ** n * zeta_int_minus_1(n) / (n * (n + 1) * (n + 2))
        for n in range(2, min(N, 60) + 1)
    ]
    return base + math.fsum(tail)


# ---------------------------------------------------------------------------
# Inequality chains

def _chain_violation(members: list[float]) -> float:
    """Largest ordering violation of a <= chain, normalized by member scale."""
    scale = max(1.0, max(abs(v) for v in members))
    worst = max(
        (members[i] - members[i + 1] for i in range(len(members) - 1)),
        default=0.0,
    )
    return max(0.0, worst) / scale


def inequality_report_psi2(x: float, a: float) -> ResidualReport:
    """Evaluate the four displayed inequality chains at one (x, a).

    Residuals are normalized ordering violations (0 when the chain
    holds).  The Gautschi chain is reported as not-applicable when
    x + floor(a) < x_0.
    """
    if x <= 0.0 or a < 0.0:
        raise ValueError("require x > 0 and a >= 0")
    entry = _psi2_entry()
    g = entry.g.eval
    dg = lambda y: g(y + 1.0) - g(y)
    d2g = lambda y: g(y + 2.0) - 2.0 * g(y + 1.0) + g(y)

    points = []
    residuals = []
    sides = []

    # Wendel: 0 <= sign(a(a-1)(a-2)) (psi(x+a) - psi(x) - a g(x) - C(a,2) dg(x))
    #           <= |C(a-1,2)| (dg(x+a) - dg(x)) <= ceil(a) |C(a-1,2)| d2g(x)
    s = a * (a - 1.0) * (a - 2.0)
    sgn = 0.0 if s == 0.0 else math.copysign(1.0, s)
    w1 = sgn * (psi2_value(x + a) - psi2_value(x) - a * g(x)
                - gen_binomial(a, 2) * dg(x))
    w2 = abs(gen_binomial(a - 1.0, 2)) * (dg(x + a) - dg(x))
    w3 = math.ceil(a) * abs(gen_binomial(a - 1.0, 2)) * d2g(x)
    chain = [0.0, w1, w2, w3]
    points.append(("wendel", x, a, "checked"))
    residuals.append(_chain_violation(chain))
    sides.append(chain)

    # Webster: 0 <= psi(x+a+1) - psi(x+floor(a)+1) - {a} g(x+floor(a)+1)
    #               - C({a},2) dg(x+floor(a)+1)
    #            <= ({a}/2)(g(x+a) - g(x+floor(a)+1) - ({a}-1) dg(x+floor(a)+1))
    fa = math.floor(a)
    fr = a - fa
    base = x + fa + 1.0
    b1 = (psi2_value(x + a + 1.0) - psi2_value(base) - fr * g(base)
          - gen_binomial(fr, 2) * dg(base))
    b2 = 0.5 * fr * (g(x + a) - g(base) - (fr - 1.0) * dg(base))
    chain = [0.0, b1, b2]
    points.append(("webster", x, a, "checked"))
    residuals.append(_chain_violation(chain))
    sides.append(chain)

    # Gautschi: (a - ceil(a)) ln Gamma(x + ceil(a)) <= psi(x+a) - psi(x+ceil(a))
    #             <= (a - ceil(a)) g(x + floor(a)),  when x + floor(a) >= x_0
    if x + fa >= GAUTSCHI_X0:
        ca = math.ceil(a)
        lo = (a - ca) * lngamma_value(x + ca)
        mid = psi2_value(x + a) - psi2_value(x + ca)
        hi = (a - ca) * g(x + fa)
        chain = [lo, mid, hi]
        points.append(("gautschi", x, a, "checked"))
        residuals.append(_chain_violation(chain))
        sides.append(chain)
    else:
        points.append(("gautschi", x, a, "not-applicable"))
        residuals.append(0.0)
        sides.append([])

    # Stirling-based: 0 <= -J^3[Sigma g](x)
    #                   <= integral_0^1 C(t-1,2)(dg(x+t) - dg(x)) dt
    #                   <= (5/12) d2g(x)
    s1 = -binet(entry.g, 2, x, mode="explicit")
    dgx = dg(x)
    s2 = integrate(
        lambda t: 0.5 * (t - 1.0) * (t - 2.0) * (dg(x + t) - dgx),
        0.0, 1.0, tol=1e-11,
    ).value
    s3 = (5.0 / 12.0) * d2g(x)
    chain = [0.0, s1, s2, s3]
    points.append(("stirling", x, a, "checked"))
    residuals.append(_chain_violation(chain))
    sides.append(chain)

    return make_report("inequalities-psi2", points, residuals, sides)


def bounds_alpha_beta(x: float) -> tuple[float, float]:
    """Closed-form envelope (alpha(x), beta(x)) with alpha <= psi_-2 <= beta."""
    if x <= 0.0:
        raise ValueError("x must be positive")
    ln_a = named_constant("ln_glaisher")
    ln_2pi = named_constant("ln_2pi")
    alpha = math.fsum([
        ln_a,
        -5.0 / 18.0,
        x / 24.0,
        -5.0 / 6.0 * x * x,
        0.5 * x * ln_2pi,
        -x * (x * x + 12.0) / 12.0 * math.log(x),
        (x + 1.0) * (x * x + 5.0 * x + 1.0) / 12.0 * math.log(x + 1.0),
    ])
    beta = math.fsum([
        ln_a,
        -1.0 / 3.0,
        -0.75 * x * x,
        0.5 * x * ln_2pi,
        -x * math.log(x),
        (x + 1.0) * (6.0 * x - 1.0) / 12.0 * math.log(x + 1.0),
        (x + 2.0) / 12.0 * math.log(x + 2.0),
    ])
    return alpha, beta


_SUP_GAP_GRID = tuple(
    [1e-6, 1e-5, 1e-4, 1e-3, 0.01, 0.05]
    + [0.1 * k for k in range(1, 101)]
    + [15.0, 20.0, 30.0, 50.0]
)


def alpha_beta_sup_gap(grid=None) -> float:
    """max_x (beta - alpha) over the grid; the supremum is reached as x -> 0."""
    if grid is None:
        grid = _SUP_GAP_GRID
    gaps = []
    for x in grid:
        alpha, beta = bounds_alpha_beta(x)
        gaps.append(beta - alpha)
    return max(gaps)


# ---------------------------------------------------------------------------
# Alternative characterization

def characterization_limit_psi2(x: float, n: int) -> float:
    """f(x+n) - f(n) - x ln Gamma(n) - (x^2/2) ln n with f = engine psi_-2.

    Converges to 0 as n grows exactly when f is the right solution; the
    rate is empirical.
    """
    if x < 0.0:
        raise ValueError("x must be >= 0")
    if n < 2:
        raise ValueError("n must be >= 2")
    if x == 0.0:
        return 0.0
    return (
        psi2_value(x + n) - psi2_value(float(n))
        - x * lngamma_value(float(n))
        - 0.5 * x * x * math.log(n)
    )


def gautschi_root_check(tol: float = 1e-12) -> float:
    """Bisection root of the digamma oracle near x_0; returns |root - stored|."""
    lo, hi = 1.0, 2.0
    while hi - lo > tol / 4.0:
        mid = 0.5 * (lo + hi)
        if reference_digamma(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return abs(0.5 * (lo + hi) - GAUTSCHI_X0)
