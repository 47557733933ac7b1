"""Built-in function entries, independent reference oracles, named constants.

Each entry packages a GFunction (with closed-form jets and antiderivative)
together with closed-form sigma/gamma values and an oracle computed by
classical means only: Stirling-type series and direct quadrature, never
the summation engine itself.  The oracles are what the acceptance tests
trust.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .exprlang import Jet, eval_jet, evaluate, parse
from .shape import classify
from .sigma import GFunction
from .numerics import integrate

_CONSTANT_TABLE = {
    "euler_gamma": 0.5772156649015329,
    "ln_glaisher": 0.24875447703378425,
    "ln_2pi": 1.8378770664093456,
    "ln_pi": 1.1447298858494002,
    "ln_2": 0.6931471805599453,
}

_HALF_LN_2PI = _CONSTANT_TABLE["ln_2pi"] / 2.0

# closed forms assembled from the constants above, frozen as literals so
# results stay bit-identical across runs
_SIGMA_LN = -0.08106146679532726        # ln(2 pi)/2 - 1
_SIGMA_PSI2G = -0.04177625636387937     # ln A + ln(2 pi)/4 - 3/4
_GAMMA_PSI2G = 0.030945673793775146     # ln A + ln(2)/6 - 1/3
_SIGMA_XLNX = -0.08457885629954907      # ln A - 1/3


def named_constant(name: str) -> float:
    """Stored value of a named constant; raises KeyError on unknown names."""
    if name not in _CONSTANT_TABLE:
        raise KeyError(f"unknown constant {name!r}")
    return _CONSTANT_TABLE[name]


@dataclass(frozen=True)
class CatalogEntry:
    """A GFunction plus the ground truth the tests compare against.

    offset shifts the normalized Sigma g onto the named special function
    (Sigma g + offset = reference target); sigma_closed/gamma_closed are
    the closed-form constants when the literature provides them.
    """

    name: str
    g: GFunction
    sigma_closed: Optional[float]
    gamma_closed: Optional[float]
    offset: float
    reference: Optional[Callable[[float], float]]


@lru_cache(maxsize=None)
def reference_lgamma(x: float) -> float:
    """Classical log-gamma oracle: shift to x+k >= 10, then Stirling series.

    Bernoulli corrections through B10 keep the absolute error below
    1e-11 on (0, 200].
    """
    if x <= 0.0:
        raise ValueError("x must be positive")
    shift = []
    y = x
    while y < 10.0:
        shift.append(math.log(y))
        y += 1.0
    y2 = y * y
    series = [
        (y - 0.5) * math.log(y),
        -y,
        _HALF_LN_2PI,
        1.0 / (12.0 * y),
        -1.0 / (360.0 * y * y2),
        1.0 / (1260.0 * y * y2 * y2),
        -1.0 / (1680.0 * y * y2 * y2 * y2),
        1.0 / (1188.0 * y * y2 * y2 * y2 * y2),
    ]
    return math.fsum(series) - math.fsum(shift)


@lru_cache(maxsize=None)
def reference_digamma(x: float) -> float:
    """Digamma oracle by the same shift-then-asymptotic-series scheme."""
    if x <= 0.0:
        raise ValueError("x must be positive")
    shift = []
    y = x
    while y < 10.0:
        shift.append(1.0 / y)
        y += 1.0
    y2 = y * y
    series = [
        math.log(y),
        -0.5 / y,
        -1.0 / (12.0 * y2),
        1.0 / (120.0 * y2 * y2),
        -1.0 / (252.0 * y2 * y2 * y2),
        1.0 / (240.0 * y2 * y2 * y2 * y2),
        -1.0 / (132.0 * y2 * y2 * y2 * y2 * y2),
    ]
    return math.fsum(series) - math.fsum(shift)


@lru_cache(maxsize=None)
def reference_psi2(x: float) -> float:
    """integral_0^x ln Gamma(t) dt by quadrature of the log-gamma oracle.

    The endpoint singularity is removed exactly: ln Gamma(t) =
    ln Gamma(t+1) - ln t, and integral_0^x (-ln t) dt = x - x ln x.
    """
    if x <= 0.0:
        raise ValueError("x must be positive")
    smooth = integrate(lambda t: reference_lgamma(t + 1.0), 0.0, x, tol=1e-11).value
    return smooth - (x * math.log(x) - x)


def _jet_ln(x: float, r: int) -> Jet:
    coeffs = [math.log(x)]
    for k in range(1, r + 1):
        coeffs.append((-1.0) ** (k - 1) / (k * x ** k))
    return Jet(center=x, coeffs=tuple(coeffs))


def _tail_psi2g(x: float, r: int) -> list[float]:
    # shared c_k, k >= 2, for both x ln x families: g'' = 1/x onward
    return [(-1.0) ** k / (k * (k - 1) * x ** (k - 1)) for k in range(2, r + 1)]


def _jet_psi2g(x: float, r: int) -> Jet:
    coeffs = [x * math.log(x) - x + _HALF_LN_2PI]
    if r >= 1:
        coeffs.append(math.log(x))
    coeffs.extend(_tail_psi2g(x, r))
    return Jet(center=x, coeffs=tuple(coeffs))


def _jet_xlnx(x: float, r: int) -> Jet:
    coeffs = [x * math.log(x)]
    if r >= 1:
        coeffs.append(math.log(x) + 1.0)
    coeffs.extend(_tail_psi2g(x, r))
    return Jet(center=x, coeffs=tuple(coeffs))


def _jet_recip(x: float, r: int) -> Jet:
    coeffs = [(-1.0) ** k / x ** (k + 1) for k in range(r + 1)]
    return Jet(center=x, coeffs=tuple(coeffs))


def _antideriv_psi2g(x: float) -> float:
    c = _HALF_LN_2PI
    return 0.5 * x * x * math.log(x) - 0.75 * x * x + c * x + 0.75 - c


@lru_cache(maxsize=None)
def builtin(name: str) -> CatalogEntry:
    """Catalog lookup; entries are shared singletons (sigma cache included)."""
    if name == "ln":
        g = GFunction(
            eval=math.log,
            jet=_jet_ln,
            antideriv=lambda x: x * math.log(x) - x + 1.0,
            p=1, shape="concave", name="ln",
        )
        return CatalogEntry(
            name="ln", g=g,
            sigma_closed=_SIGMA_LN, gamma_closed=_SIGMA_LN,
            offset=0.0, reference=reference_lgamma,
        )
    if name == "psi2g":
        g = GFunction(
            eval=lambda x: x * math.log(x) - x + _HALF_LN_2PI,
            jet=_jet_psi2g,
            antideriv=_antideriv_psi2g,
            p=2, shape="concave", name="psi2g",
        )
        return CatalogEntry(
            name="psi2g", g=g,
            sigma_closed=_SIGMA_PSI2G, gamma_closed=_GAMMA_PSI2G,
            offset=_HALF_LN_2PI, reference=reference_psi2,
        )
    if name == "xlnx":
        g = GFunction(
            eval=lambda x: x * math.log(x),
            jet=_jet_xlnx,
            antideriv=lambda x: 0.5 * x * x * math.log(x) - 0.25 * x * x + 0.25,
            p=2, shape="concave", name="xlnx",
        )
        return CatalogEntry(
            name="xlnx", g=g,
            sigma_closed=_SIGMA_XLNX, gamma_closed=_GAMMA_PSI2G,
            offset=0.0,
            # Sigma(x ln x) is the log-hyperfactorial: C(x,2) + psi2(x) - x psi2(1)
            reference=lambda x: 0.5 * x * (x - 1.0) + reference_psi2(x)
                                - x * _HALF_LN_2PI,
        )
    if name == "recip":
        g = GFunction(
            eval=lambda x: 1.0 / x,
            jet=_jet_recip,
            antideriv=math.log,
            p=0, shape="concave", name="recip",
        )
        return CatalogEntry(
            name="recip", g=g,
            sigma_closed=_CONSTANT_TABLE["euler_gamma"],
            gamma_closed=_CONSTANT_TABLE["euler_gamma"],
            offset=0.0,
            reference=lambda x: reference_digamma(x) + _CONSTANT_TABLE["euler_gamma"],
        )
    raise KeyError(f"unknown catalog entry {name!r}")


CATALOG_NAMES = ("ln", "psi2g", "xlnx", "recip")


def from_expression(src: str, p: Optional[int] = None, shape: Optional[str] = None,
                    name: Optional[str] = None, rng=None) -> CatalogEntry:
    """Build a CatalogEntry from expression-language source text.

    p and shape come from classify() unless overridden; no closed forms
    or oracle are attached, so only engine-internal invariants apply.
    """
    tree = parse(src)

    def g_eval(x: float) -> float:
        return evaluate(tree, x)

    def g_jet(x: float, r: int) -> Jet:
        return eval_jet(tree, x, r)

    if p is None or shape is None:
        report = classify(g_eval, rng=rng)
        p = report.p if p is None else p
        shape = report.shape if shape is None else shape
    g = GFunction(eval=g_eval, jet=g_jet, antideriv=None, p=p, shape=shape,
                  name=name or src)
    return CatalogEntry(name=g.name, g=g, sigma_closed=None, gamma_closed=None,
                        offset=0.0, reference=None)
