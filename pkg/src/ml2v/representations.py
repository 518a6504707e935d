"""Contour-integral evaluation of E(x, y) with residue corrections.

Every route here evaluates the same keyhole-contour integral

    I = (1/(2 pi i alpha beta)) * integral over gamma(eps; theta) of
        exp(zeta^(1/(alpha beta))) * zeta^((1+alpha+beta-mu)/(alpha beta) - 1)
        / ((zeta^(1/beta) - x) * (zeta^(1/alpha) - y)) dzeta

and differs only in which residue terms join it.  The factor zeta^(1/beta)
is not injective on the cut plane when beta < 1, so the x denominator can
vanish at several preimages |x|^beta * exp(i*beta*(arg x + 2 pi k)), one per
integer k that keeps the angle inside (-pi, pi]; likewise for y with alpha.
Every preimage that lies in the outer wedge Omega+ contributes its residue.
The four entry points eval_lemma1 (no residues), eval_lemma2 (y residues),
eval_remark1 (x residues), eval_lemma3 (both) cover the four placements.
Their method tags follow the public naming used across the CLI.

eval_auto picks a contour, classifies the images, dispatches, and falls
back to the double series when the construction degenerates; very large
arguments are routed to the asymptotic expansions first.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from mpmath import mp

from .contour import IntegrandSpec, integrate, size_contour
from .core import (
    ContourSpec,
    Evaluation,
    Parameters,
    RegionLabel,
    admissible_theta_window,
    check_angle_window,
    classify_region,
    contour_distance,
)
from .errors import (
    BudgetExceeded,
    DegenerateDenominator,
    DomainError,
    GeometryError,
    PoleProximityError,
    QuadratureError,
    RegionError,
)
from .series import SeriesBudget, eval_double_series

_EPS = float(np.finfo(float).eps)

# Residue denominators and pole separations smaller than this relative
# floor abort the representation in favor of the series.
DEGENERACY_FLOOR_REL = 1e-6

# Dispatcher policy thresholds on |x|, |y|.
SERIES_RADIUS = 1.0
ASYMPTOTIC_RADIUS = 15.0

# choose_contour aims for at least this contour clearance per pole image,
# relative to max(1, |image|).
_CLEARANCE_TARGET = 0.05
_EPSILON_LADDER = (1.0, 0.5, 2.0, 0.25, 4.0, 0.1, 8.0, 0.04)


def pole_image(w: complex, power: float) -> complex | None:
    """w**power as the principal pole location on the cut plane.

    Returns None when the phase power*arg(w) leaves (-pi, pi]: the
    integrand's principal-branch denominator then has no zero at the
    principal image.  Other preimages may still exist for power < 1;
    pole_images enumerates them all.
    """
    w = complex(w)
    if w == 0:
        return 0j
    ph = power * cmath.phase(w)
    if abs(ph) > math.pi * (1.0 + 1e-12):
        return None
    return cmath.rect(abs(w) ** power, ph)


def pole_images(w: complex, power: float) -> tuple[complex, ...]:
    """All cut-plane solutions zeta of zeta^(1/power) = w.

    They sit at |w|^power * exp(i*power*(arg w + 2 pi k)) for every integer
    k keeping that angle inside (-pi, pi].  For power >= 1 there is at most
    one; for power < 1 up to ceil(1/power) preimages coexist and each is a
    genuine pole of the integrand.
    """
    w = complex(w)
    if w == 0:
        return (0j,)
    ph = cmath.phase(w)
    r = abs(w) ** power
    lo = (-math.pi / power - ph) / (2.0 * math.pi)
    hi = (math.pi / power - ph) / (2.0 * math.pi)
    out = []
    for k in range(math.floor(lo), math.ceil(hi) + 1):
        ang = power * (ph + 2.0 * math.pi * k)
        if -math.pi < ang <= math.pi:
            out.append(cmath.rect(r, ang))
    return tuple(out)


def ml_integrand(x: complex, y: complex, params: Parameters) -> IntegrandSpec:
    """Integrand of the contour representation, with its poles declared."""
    a, b = params.alpha, params.beta
    d = 1.0 / (a * b)
    p = (1.0 + a + b - params.mu) * d - 1.0

    def f(z: np.ndarray) -> np.ndarray:
        return np.exp(z**d) * z**p / ((z ** (1.0 / b) - x) * (z ** (1.0 / a) - y))

    poles = pole_images(x, b) + pole_images(y, a)
    return IntegrandSpec(f=f, decay=d, poles=poles)


def _label_of(labels: list[RegionLabel]) -> RegionLabel:
    """Collapse per-preimage labels: on-contour dominates, then Omega+."""
    if any(l is RegionLabel.ON_CONTOUR for l in labels):
        return RegionLabel.ON_CONTOUR
    if any(l is RegionLabel.OMEGA_PLUS for l in labels):
        return RegionLabel.OMEGA_PLUS
    return RegionLabel.OMEGA_MINUS


def classify_pair(
    x: complex, y: complex, params: Parameters, spec: ContourSpec
) -> tuple[RegionLabel, RegionLabel]:
    """Region labels of x and y via their preimages against the contour.

    An argument is Omega+ when any of its preimages lies in the outer
    wedge, on-contour when any preimage is pinned on the contour within
    tolerance, and Omega- otherwise (including arguments whose phase keeps
    every preimage off the cut plane).
    """
    lx = [classify_region(img, spec) for img in pole_images(x, params.beta)]
    ly = [classify_region(img, spec) for img in pole_images(y, params.alpha)]
    return _label_of(lx), _label_of(ly)


def _precise_term(
    z: complex,
    p_def: float,
    p_den: float,
    mu: complex,
    w_def: complex,
    w_den: complex,
) -> complex:
    """Residue at the preimage z of w_def under zeta -> zeta^(1/p_def).

    Returns exp(zeta^d) zeta^(p+1) / (p_den * w_def * (zeta^(1/p_den) -
    w_den)) with d = 1/(p_def p_den) and p+1 = (1 + p_def + p_den -
    mu) d, built at 30 digits and collapsed to a double once.

    exp(zeta^d) amplifies rounding of the pole or of the exponent d by
    |zeta^d|, which costs several digits whenever the pole is large.  So
    the exponents are re-derived from p_def and p_den here rather than
    accepted pre-rounded, and the double seed z is sharpened by Newton
    steps on zeta^(1/p_def) = w_def before the term is assembled.
    """
    with mp.workdps(30):
        pd = mp.mpf(p_def)
        pn = mp.mpf(p_den)
        prod = pd * pn
        pe1 = (1 + pd + pn - mp.mpc(mu)) / prod
        wd = mp.mpc(w_def)
        root = 1 / pd
        zm = mp.mpc(z)
        for _ in range(2):
            zm = zm - (zm**root - wd) * zm ** (1 - root) * pd
        den = zm ** (1 / pn) - mp.mpc(w_den)
        return complex(mp.exp(zm ** (1 / prod)) * zm**pe1 / (pn * wd * den))


def residue_terms_x(
    x: complex, y: complex, params: Parameters, images: tuple[complex, ...]
) -> list[complex]:
    """Per-preimage residue contributions from the x denominator.

    At a preimage zeta with zeta^(1/beta) = x the residue of the
    normalized integral is exp(zeta^d) * zeta^(p+1) / (alpha * x *
    (zeta^(1/alpha) - y)); at the principal preimage this reduces to the
    closed form (1/alpha) exp(x^(1/alpha)) x^((1+beta-mu)/alpha) /
    (x^(beta/alpha) - y).
    """
    a, b = params.alpha, params.beta
    out = []
    for z in images:
        w2 = z ** (1.0 / a)
        den = w2 - y
        if abs(den) <= DEGENERACY_FLOOR_REL * (1.0 + abs(w2) + abs(y)):
            raise DegenerateDenominator(
                f"x-pole at {z:.6g}: |zeta^(1/alpha) - y| = {abs(den):.3g} "
                f"is inside the degeneracy floor"
            )
        out.append(_precise_term(z, b, a, params.mu, x, y))
    return out


def residue_terms_y(
    x: complex, y: complex, params: Parameters, images: tuple[complex, ...]
) -> list[complex]:
    """Per-preimage residue contributions from the y denominator."""
    a, b = params.alpha, params.beta
    out = []
    for z in images:
        w1 = z ** (1.0 / b)
        den = w1 - x
        if abs(den) <= DEGENERACY_FLOOR_REL * (1.0 + abs(w1) + abs(x)):
            raise DegenerateDenominator(
                f"y-pole at {z:.6g}: |zeta^(1/beta) - x| = {abs(den):.3g} "
                f"is inside the degeneracy floor"
            )
        out.append(_precise_term(z, a, b, params.mu, y, x))
    return out


def residue_error_weights(
    params: Parameters, images: tuple[complex, ...]
) -> list[float]:
    """Relative-rounding weights for the residue terms at the given poles.

    Terms are constructed in extended precision and collapse once to a
    double, so only that rounding and the later accumulation remain.
    """
    return [8.0] * len(images)


def residue_y(x: complex, y: complex, params: Parameters) -> complex:
    """Principal-preimage residue term for y.

    (1/beta) * exp(y^(1/beta)) * y^((1+alpha-mu)/beta) / (y^(alpha/beta) - x)
    """
    img = None if y == 0 else pole_image(y, params.alpha)
    if img is None:
        raise DomainError(
            f"y = {y:.6g} has no principal pole image for alpha = {params.alpha}"
        )
    return residue_terms_y(x, y, params, (img,))[0]


def residue_x(x: complex, y: complex, params: Parameters) -> complex:
    """Principal-preimage residue term for x.

    (1/alpha) * exp(x^(1/alpha)) * x^((1+beta-mu)/alpha) / (x^(beta/alpha) - y)
    """
    img = None if x == 0 else pole_image(x, params.beta)
    if img is None:
        raise DomainError(
            f"x = {x:.6g} has no principal pole image for beta = {params.beta}"
        )
    return residue_terms_x(x, y, params, (img,))[0]


def _contour_piece(
    x: complex, y: complex, params: Parameters, spec: ContourSpec, tol: float
) -> tuple[complex, float]:
    """The normalized contour integral and its absolute error estimate."""
    integrand = ml_integrand(x, y, params)
    scale = 2.0 * math.pi * params.alpha * params.beta
    quad_tol = tol * scale * 0.9
    dc = size_contour(spec, integrand, quad_tol)
    ev = integrate(dc, integrand, tol=quad_tol)
    return complex(ev.value / (1j * scale)), ev.est_error / scale


def _check_labels(
    got: tuple[RegionLabel, RegionLabel],
    want: tuple[RegionLabel, RegionLabel],
    route: str,
) -> None:
    if RegionLabel.ON_CONTOUR in got:
        raise RegionError(
            f"{route}: an argument image lies on the contour within tolerance"
        )
    if got != want:
        raise RegionError(
            f"{route} needs (x, y) regions {tuple(w.value for w in want)}, "
            f"got {tuple(g.value for g in got)}"
        )


def _route_state(
    x: complex, y: complex, params: Parameters, spec: ContourSpec
) -> tuple[
    tuple[RegionLabel, RegionLabel], tuple[complex, ...], tuple[complex, ...]
]:
    """Pair labels plus the preimages sitting in Omega+ for each argument."""
    xs = pole_images(x, params.beta)
    ys = pole_images(y, params.alpha)
    lx = [classify_region(img, spec) for img in xs]
    ly = [classify_region(img, spec) for img in ys]
    x_in = tuple(im for im, l in zip(xs, lx) if l is RegionLabel.OMEGA_PLUS)
    y_in = tuple(im for im, l in zip(ys, ly) if l is RegionLabel.OMEGA_PLUS)
    return (_label_of(lx), _label_of(ly)), x_in, y_in


def _check_pole_separation(
    x_in: tuple[complex, ...], y_in: tuple[complex, ...]
) -> None:
    # coincident x- and y-preimages merge into a double pole the simple
    # residue terms cannot represent
    for u in x_in:
        for v in y_in:
            if abs(u - v) <= DEGENERACY_FLOOR_REL * (1.0 + abs(u) + abs(v)):
                raise DegenerateDenominator(
                    f"pole images {u:.6g} and {v:.6g} are too close"
                )


def eval_lemma1(
    x: complex,
    y: complex,
    params: Parameters,
    spec: ContourSpec,
    tol: float = 1e-8,
) -> Evaluation:
    """Pure contour integral: every preimage in Omega-, no residue terms."""
    check_angle_window(spec, params)
    labels, _, _ = _route_state(x, y, params, spec)
    _check_labels(labels, (RegionLabel.OMEGA_MINUS, RegionLabel.OMEGA_MINUS), "lemma1")
    val, est = _contour_piece(x, y, params, spec, tol)
    return Evaluation(val, est + 8.0 * _EPS * abs(val), "lemma1")


def eval_lemma2(
    x: complex,
    y: complex,
    params: Parameters,
    spec: ContourSpec,
    tol: float = 1e-8,
) -> Evaluation:
    """Contour integral plus y residues: x in Omega-, y in Omega+."""
    check_angle_window(spec, params)
    labels, _, y_in = _route_state(x, y, params, spec)
    _check_labels(labels, (RegionLabel.OMEGA_MINUS, RegionLabel.OMEGA_PLUS), "lemma2")
    terms = residue_terms_y(x, y, params, y_in)
    res = sum(terms)
    val, est = _contour_piece(x, y, params, spec, tol)
    total = res + val
    weights = residue_error_weights(params, y_in)
    slack = sum(w * abs(t) for w, t in zip(weights, terms)) + 16.0 * abs(total)
    return Evaluation(total, est + _EPS * slack, "lemma2")


def eval_remark1(
    x: complex,
    y: complex,
    params: Parameters,
    spec: ContourSpec,
    tol: float = 1e-8,
) -> Evaluation:
    """Contour integral plus x residues: x in Omega+, y in Omega-."""
    check_angle_window(spec, params)
    labels, x_in, _ = _route_state(x, y, params, spec)
    _check_labels(labels, (RegionLabel.OMEGA_PLUS, RegionLabel.OMEGA_MINUS), "remark1")
    terms = residue_terms_x(x, y, params, x_in)
    res = sum(terms)
    val, est = _contour_piece(x, y, params, spec, tol)
    total = res + val
    weights = residue_error_weights(params, x_in)
    slack = sum(w * abs(t) for w, t in zip(weights, terms)) + 16.0 * abs(total)
    return Evaluation(total, est + _EPS * slack, "remark1")


def eval_lemma3(
    x: complex,
    y: complex,
    params: Parameters,
    spec: ContourSpec,
    tol: float = 1e-8,
) -> Evaluation:
    """Contour integral plus both residue families: both in Omega+.

    Requires the contributing x- and y-preimages to stay apart: coincident
    preimages collapse two simple poles into a double pole the residue
    terms cannot represent.
    """
    check_angle_window(spec, params)
    labels, x_in, y_in = _route_state(x, y, params, spec)
    _check_labels(labels, (RegionLabel.OMEGA_PLUS, RegionLabel.OMEGA_PLUS), "lemma3")
    _check_pole_separation(x_in, y_in)
    terms = residue_terms_x(x, y, params, x_in) + residue_terms_y(
        x, y, params, y_in
    )
    res = sum(terms)
    val, est = _contour_piece(x, y, params, spec, tol)
    total = res + val
    weights = residue_error_weights(params, x_in + y_in)
    slack = sum(w * abs(t) for w, t in zip(weights, terms)) + 16.0 * abs(total)
    return Evaluation(total, est + _EPS * slack, "lemma3")


def choose_contour(x: complex, y: complex, params: Parameters) -> ContourSpec:
    """Default contour for (x, y): widest admissible angle, cleared radius.

    theta sits just inside the top of the admissible window (maximal ray
    decay); eps starts at 1 and walks a ladder until both pole images clear
    the contour by a relative margin, keeping the quadrature well away from
    the integrand's poles.
    """
    lo, hi = admissible_theta_window(params, warn=False)
    theta = hi * (1.0 - 1e-3)
    if theta <= lo:
        theta = 0.5 * (lo + hi)
    images = [
        img
        for img in pole_images(x, params.beta) + pole_images(y, params.alpha)
        if img != 0
    ]
    best, best_clear = None, -1.0
    for eps in _EPSILON_LADDER:
        spec = ContourSpec(eps, theta)
        clear = min(
            (contour_clearance(img, spec) for img in images), default=math.inf
        )
        if clear >= _CLEARANCE_TARGET:
            return spec
        if clear > best_clear:
            best, best_clear = spec, clear
    return best if best is not None else ContourSpec(1.0, theta)


def contour_clearance(point: complex, spec: ContourSpec) -> float:
    """Distance from point to the contour, relative to max(1, |point|)."""
    return contour_distance(point, spec) / max(1.0, abs(point))


def eval_with_contour(
    x: complex,
    y: complex,
    params: Parameters,
    spec: ContourSpec,
    tol: float = 1e-8,
) -> Evaluation:
    """Dispatch to the representation matching where the pole images fall.

    Classifies every preimage of x and y against spec and calls the route
    for that pattern; raises RegionError when any image is pinned on the
    contour itself.
    """
    labels = classify_pair(x, y, params, spec)
    plus, minus = RegionLabel.OMEGA_PLUS, RegionLabel.OMEGA_MINUS
    route = {
        (minus, minus): eval_lemma1,
        (minus, plus): eval_lemma2,
        (plus, minus): eval_remark1,
        (plus, plus): eval_lemma3,
    }.get(labels)
    if route is None:
        raise RegionError("argument image pinned on the contour")
    return route(x, y, params, spec, tol)


def eval_auto(x: complex, y: complex, params: Parameters, tol: float = 1e-8) -> Evaluation:
    """Dispatch between series, contour representations, and asymptotics.

    Small arguments (both within the unit disk) go straight to the series.
    Large arguments (both beyond ASYMPTOTIC_RADIUS) try the asymptotic
    expansion first.  Everything else, and every failed attempt, funnels
    through the contour representations and finally back to the series.
    Raises BudgetExceeded only when every route fails to certify a result.
    """
    x = complex(x)
    y = complex(y)
    if max(abs(x), abs(y)) <= SERIES_RADIUS:
        return eval_double_series(x, y, params, SeriesBudget(tol=min(tol, 1e-12)))

    if min(abs(x), abs(y)) >= ASYMPTOTIC_RADIUS:
        from .asymptotics import eval_asymptotic

        try:
            ev = eval_asymptotic(x, y, params)
            if math.isfinite(ev.est_error) and ev.est_error <= tol * max(
                1.0, abs(ev.value)
            ):
                return ev
        except (ArithmeticError, ValueError, RuntimeError):
            pass

    try:
        return eval_with_contour(x, y, params, choose_contour(x, y, params), tol)
    except (
        RegionError,
        DegenerateDenominator,
        PoleProximityError,
        QuadratureError,
        GeometryError,
    ):
        pass

    ev = eval_double_series(x, y, params, SeriesBudget(tol=min(tol, 1e-12)))
    if not math.isfinite(ev.est_error):
        raise BudgetExceeded(
            f"no method certified a value at x={x:.6g}, y={y:.6g} "
            f"(alpha={params.alpha}, beta={params.beta})"
        )
    return ev
