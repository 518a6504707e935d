"""Parameter domain, contour geometry, and region classification.

The function under study is

    E(x, y) = sum_{n,m >= 0} x^n y^m / Gamma(alpha*n + beta*m + mu),

entire in (x, y) for alpha, beta > 0.  Everything downstream (series windows,
contour angles, region splits) is driven by the small amount of geometry
defined here: the keyhole contour gamma(eps; theta) made of two rays at
arg = +-theta and the arc of radius eps joining them, oriented by
non-decreasing argument, and the two regions it separates.  Omega+ is the
open wedge |arg z| < theta outside the arc; Omega- is everything else,
including the open disk |z| < eps.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, GeometryError, ThinWindowWarning

# Admissible angle window narrower than this fraction of its upper edge
# triggers ThinWindowWarning (alpha*beta near 2 squeezes the window shut).
THIN_WINDOW_FRACTION = 0.05

# Default classification tolerance: delta_b = DELTA_B_REL * max(1, |point|).
DELTA_B_REL = 1e-9


class Regime(Enum):
    """Which validity regime the parameters fall in."""

    STANDARD = "standard"       # 0 < alpha, beta < 2 and alpha*beta < 2
    LEMMA4 = "boundary"         # alpha = 2 or beta = 2, needs Re(mu) > 0


class RegionLabel(Enum):
    OMEGA_PLUS = "omega+"
    OMEGA_MINUS = "omega-"
    ON_CONTOUR = "on-contour"


@dataclass(frozen=True)
class Parameters:
    """Validated (alpha, beta, mu) triple; build via validate_params."""

    alpha: float
    beta: float
    mu: complex
    regime: Regime


@dataclass(frozen=True)
class Evaluation:
    """A value with an honest error estimate and the method that made it.

    est_error is absolute; +inf signals failure to meet tolerance, NaN is
    forbidden.
    """

    value: complex
    est_error: float
    method: str

    def __post_init__(self) -> None:
        if math.isnan(self.est_error) or self.est_error < 0:
            raise ValueError("est_error must be a nonnegative float or +inf")


@dataclass(frozen=True)
class ContourSpec:
    """Keyhole contour gamma(eps; theta): rays at arg = +-theta, arc radius eps.

    theta = pi is allowed and means the circle plus the twice-passed negative
    half-axis (upper passage at arg +pi, lower at arg -pi).
    """

    epsilon: float
    theta: float

    def __post_init__(self) -> None:
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise DomainError(f"contour radius must be positive, got {self.epsilon}")
        if not (0.0 < self.theta <= math.pi):
            raise DomainError(f"contour angle must lie in (0, pi], got {self.theta}")


def validate_params(alpha: float, beta: float, mu: complex) -> Parameters:
    """Validate orders and offset, returning Parameters with the regime set.

    Raises DomainError for alpha or beta outside (0, 2], for alpha*beta >= 2
    with both orders below 2, and for a boundary order (alpha = 2 or
    beta = 2) with Re(mu) <= 0.
    """
    alpha = float(alpha)
    beta = float(beta)
    mu = complex(mu)
    if not (math.isfinite(alpha) and math.isfinite(beta) and cmath.isfinite(mu)):
        raise DomainError("parameters must be finite")
    if alpha <= 0 or beta <= 0:
        raise DomainError(f"orders must be positive, got alpha={alpha}, beta={beta}")
    if alpha > 2 or beta > 2:
        raise DomainError(f"orders above 2 unsupported, got alpha={alpha}, beta={beta}")
    if alpha == 2.0 or beta == 2.0:
        if mu.real <= 0:
            raise DomainError("boundary order (alpha or beta = 2) requires Re(mu) > 0")
        regime = Regime.LEMMA4
    else:
        if alpha * beta >= 2:
            raise DomainError(
                f"alpha*beta = {alpha * beta} >= 2 leaves no admissible contour angle"
            )
        regime = Regime.STANDARD
    return Parameters(alpha, beta, mu, regime)


def admissible_theta_window(params: Parameters, warn: bool = True) -> tuple[float, float]:
    """Open-closed interval (lo, hi] of contour angles with integrand decay.

    lo = pi*alpha*beta/2 (decay requires cos(theta/(alpha*beta)) < 0),
    hi = min(pi, pi*alpha*beta) (principal branch plus theta <= pi).
    Raises GeometryError when empty; warns ThinWindowWarning when thin.
    """
    ab = params.alpha * params.beta
    lo = 0.5 * math.pi * ab
    hi = min(math.pi, math.pi * ab)
    if hi <= lo:
        raise GeometryError(
            f"no admissible contour angle: alpha*beta = {ab} leaves ({lo}, {hi}] empty"
        )
    if warn and (hi - lo) < THIN_WINDOW_FRACTION * hi:
        warnings.warn(
            f"admissible angle window ({lo:.6f}, {hi:.6f}] is thin "
            f"(alpha*beta = {ab:.4f} near 2)",
            ThinWindowWarning,
            stacklevel=2,
        )
    return lo, hi


def check_angle_window(contour: ContourSpec, params: Parameters) -> None:
    """Raise GeometryError unless the contour angle sits in the admissible window."""
    lo, hi = admissible_theta_window(params, warn=False)
    if not (lo < contour.theta <= hi):
        raise GeometryError(
            f"contour angle {contour.theta:.6f} outside admissible window "
            f"({lo:.6f}, {hi:.6f}] for alpha*beta = {params.alpha * params.beta}"
        )


def derived_contour_params(
    contour: ContourSpec, params: Parameters
) -> tuple[float, float, float, float]:
    """Derived windows (eps_alpha, eps_beta, theta_alpha, theta_beta).

    x is classified against (eps_alpha, theta_alpha) = (eps^(1/beta), theta/beta)
    because its pole image in the integration plane is x^beta; y against
    (eps_beta, theta_beta) = (eps^(1/alpha), theta/alpha).
    """
    eps, th = contour.epsilon, contour.theta
    return (
        eps ** (1.0 / params.beta),
        eps ** (1.0 / params.alpha),
        th / params.beta,
        th / params.alpha,
    )


def contour_distance(point: complex, contour: ContourSpec) -> float:
    """Euclidean distance from a point to the contour's three pieces."""
    eps, th = contour.epsilon, contour.theta
    p = complex(point)
    ph = cmath.phase(p)
    # arc of radius eps spanning |arg| <= theta
    if abs(ph) <= th:
        d = abs(abs(p) - eps)
    else:
        d = min(
            abs(p - eps * cmath.exp(1j * th)),
            abs(p - eps * cmath.exp(-1j * th)),
        )
    # the two rays {r e^{+-i theta} : r >= eps}
    for sgn in (1.0, -1.0):
        q = p * cmath.exp(-1j * sgn * th)
        if q.real >= eps:
            d = min(d, abs(q.imag))
        else:
            d = min(d, abs(q - eps))
    return d


def classify_region(
    point: complex, contour: ContourSpec, delta_b: float | None = None
) -> RegionLabel:
    """Classify a point as Omega+, Omega-, or on-contour within delta_b.

    delta_b defaults to DELTA_B_REL * max(1, |point|).  Omega+ is the wedge
    |arg point| < theta with |point| > eps; Omega- is the complement
    (including the open disk |point| < eps).
    """
    p = complex(point)
    if delta_b is None:
        delta_b = DELTA_B_REL * max(1.0, abs(p))
    if contour_distance(p, contour) <= delta_b:
        return RegionLabel.ON_CONTOUR
    if abs(cmath.phase(p)) < contour.theta and abs(p) > contour.epsilon:
        return RegionLabel.OMEGA_PLUS
    return RegionLabel.OMEGA_MINUS
