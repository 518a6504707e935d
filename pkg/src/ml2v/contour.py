"""Keyhole-contour discretization and adaptive panel quadrature.

Panels are evaluated with nested Gauss-Legendre rules (8 and 16 nodes); the
difference between the two is the panel error estimate, and the worst panel
is split until the error sum meets the tolerance or the node budget runs
out.  Ray panels are graded geometrically outward from the arc because the
integrands of interest decay like exp(cos(theta*d) * r^d) along the rays;
arc panels are uniform in angle.

The truncation radius R solves exp(cos(theta*d) * R^d) <= trunc_tol, and an
a-posteriori tail estimate from the actual endpoint magnitudes is folded
into the reported error, so algebraic prefactors the solve ignores still
show up honestly.

theta = pi is a valid contour (circle plus the twice-passed negative axis).
The two ray passages are parameterized with unit vectors exp(+-i pi) whose
tiny imaginary residue places each on the correct side of the principal
branch cut, which is exactly where the upper and lower passage belong.
"""

from __future__ import annotations

import heapq
import itertools
import math
import os
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import ContourSpec, Evaluation, contour_distance
from .errors import GeometryError, PoleProximityError, QuadratureError

DEFAULT_NODE_BUDGET = 200_000
NODE_BUDGET_ENV = "ML2V_NODE_BUDGET"

# Poles closer to the contour than this fraction of the arc radius abort
# the quadrature rather than degrade it.
POLE_FLOOR_REL = 1e-3

# Angular width per initial arc panel, before the decay-rate scaling.
_ARC_PANEL_ANGLE = math.pi / 8

_GL_COARSE = np.polynomial.legendre.leggauss(8)
_GL_FINE = np.polynomial.legendre.leggauss(16)
_EVALS_PER_PANEL = len(_GL_COARSE[0]) + len(_GL_FINE[0])


@dataclass(frozen=True)
class IntegrandSpec:
    """Evaluation contract for a contour integrand.

    f maps an ndarray of contour points to integrand values; decay is the
    exponent d in the ray decay law exp(cos(theta*d) r^d); poles are the
    integrand's finite poles (checked against the contour before any node
    is spent); pole_floor overrides the default proximity floor.
    """

    f: Callable[[np.ndarray], np.ndarray]
    decay: float
    poles: tuple[complex, ...] = ()
    pole_floor: float | None = None


@dataclass(frozen=True)
class _Panel:
    """One oriented panel: a straight segment or an arc piece."""

    kind: str            # "line" | "arc"
    a: complex           # line: start point; arc: start angle (real part)
    b: complex
    radius: float = 0.0  # arc only

    def nodes(self, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Map rule abscissae xs in [-1, 1] to points and d(point)/dx."""
        t = 0.5 * (xs + 1.0)
        if self.kind == "line":
            dz = self.b - self.a
            return self.a + t * dz, np.full_like(xs, 0.5 * dz, dtype=complex)
        phi0, phi1 = self.a.real, self.b.real
        phi = phi0 + t * (phi1 - phi0)
        z = self.radius * np.exp(1j * phi)
        return z, 0.5 * (phi1 - phi0) * 1j * z

    def split(self) -> tuple["_Panel", "_Panel"]:
        if self.kind == "line":
            mid = 0.5 * (self.a + self.b)
        else:
            mid = complex(0.5 * (self.a.real + self.b.real))
        return (
            _Panel(self.kind, self.a, mid, self.radius),
            _Panel(self.kind, mid, self.b, self.radius),
        )


@dataclass(frozen=True)
class DiscretizedContour:
    """Truncated, panelized keyhole contour ready for quadrature."""

    spec: ContourSpec
    radius: float          # truncation radius R
    decay: float
    panels: tuple[_Panel, ...]


def _ray_radii(eps: float, radius: float) -> list[float]:
    """Geometric panel breakpoints eps, 2 eps, 4 eps, ..., R."""
    rs = [eps]
    while rs[-1] * 2.0 < radius:
        rs.append(rs[-1] * 2.0)
    if rs[-1] < radius:
        rs.append(radius)
    return rs


def build_contour(
    spec: ContourSpec, decay: float, trunc_tol: float = 1e-16
) -> DiscretizedContour:
    """Truncate and panelize gamma(eps; theta) for an integrand of given decay.

    Raises GeometryError when cos(theta*decay) >= 0 (no ray decay, the
    truncation radius would not exist).
    """
    eps, theta = spec.epsilon, spec.theta
    if decay <= 0:
        raise GeometryError(f"decay exponent must be positive, got {decay}")
    c = math.cos(theta * decay)
    if c >= 0:
        raise GeometryError(
            f"cos(theta*decay) = {c:.6f} >= 0: integrand does not decay on the rays"
        )
    if not (0 < trunc_tol < 1):
        raise GeometryError(f"trunc_tol must lie in (0, 1), got {trunc_tol}")
    radius = (math.log(1.0 / trunc_tol) / -c) ** (1.0 / decay)
    radius = max(radius, 2.0 * eps)

    u_up = complex(np.exp(1j * theta))
    u_dn = complex(np.exp(-1j * theta))
    panels: list[_Panel] = []
    rs = _ray_radii(eps, radius)
    # incoming ray, from R e^{-i theta} down to eps e^{-i theta}
    for r_out, r_in in zip(rs[::-1], rs[-2::-1]):
        panels.append(_Panel("line", r_out * u_dn, r_in * u_dn))
    # arc from -theta to +theta
    n_arc = max(4, math.ceil(theta * (1.0 + abs(decay)) / _ARC_PANEL_ANGLE))
    phis = np.linspace(-theta, theta, n_arc + 1)
    for p0, p1 in zip(phis[:-1], phis[1:]):
        panels.append(_Panel("arc", complex(p0), complex(p1), radius=eps))
    # outgoing ray, from eps e^{i theta} up to R e^{i theta}
    for r_in, r_out in zip(rs[:-1], rs[1:]):
        panels.append(_Panel("line", r_in * u_up, r_out * u_up))
    return DiscretizedContour(spec=spec, radius=radius, decay=decay, panels=tuple(panels))


def size_contour(
    spec: ContourSpec,
    integrand: IntegrandSpec,
    tol: float,
    trunc_tol: float | None = None,
) -> DiscretizedContour:
    """build_contour with the radius enlarged until the actual tail is small.

    The plain truncation solve ignores algebraic prefactors in the
    integrand; this wrapper checks the a-posteriori tail bound at the
    truncation points and keeps shrinking the truncation tolerance (hence
    growing R) until that bound drops below tol / 10 or bottoms out.
    """
    tt = trunc_tol if trunc_tol is not None else min(1e-16, tol * 1e-2)
    dc = build_contour(spec, integrand.decay, tt)
    for _ in range(6):
        tail = _tail_estimate(dc, integrand.f)
        if tail <= 0.1 * tol or tt <= 1e-290:
            break
        shrink = 0.1 * tol / tail if math.isfinite(tail) and tail > 0 else 0.0
        tt = max(1e-300, tt * min(0.5, shrink))
        dc = build_contour(spec, integrand.decay, tt)
    return dc


def node_budget_default() -> int:
    raw = os.environ.get(NODE_BUDGET_ENV)
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        return max(1, int(raw))
    except ValueError:
        return DEFAULT_NODE_BUDGET


def _eval_panel(panel: _Panel, f: Callable) -> tuple[complex, float]:
    """Embedded-rule panel value and error estimate."""
    xs_c, ws_c = _GL_COARSE
    xs_f, ws_f = _GL_FINE
    z_c, dz_c = panel.nodes(xs_c)
    z_f, dz_f = panel.nodes(xs_f)
    coarse = np.sum(ws_c * f(z_c) * dz_c)
    fine = np.sum(ws_f * f(z_f) * dz_f)
    return complex(fine), float(abs(fine - coarse))


def _tail_estimate(contour: DiscretizedContour, f: Callable) -> float:
    """A-posteriori bound on the two discarded ray tails beyond R."""
    theta = contour.spec.theta
    d = contour.decay
    c = abs(math.cos(theta * d))
    ends = contour.radius * np.exp(np.array([1j * theta, -1j * theta]))
    mags = np.abs(f(ends))
    scale = contour.radius ** (1.0 - d) / (d * c)
    return float(np.sum(mags) * scale)


def integrate(
    contour: DiscretizedContour,
    integrand: IntegrandSpec,
    tol: float,
    node_budget: int | None = None,
) -> Evaluation:
    """Adaptive quadrature of integrand.f over the contour.

    Returns the raw contour integral (no 1/(2 pi i) normalization) with an
    error estimate combining panel estimates and the truncation tail.
    Raises PoleProximityError before spending nodes if a declared pole sits
    within the proximity floor, and QuadratureError if the tolerance is
    unreachable within the node budget.
    """
    if node_budget is None:
        node_budget = node_budget_default()
    floor = integrand.pole_floor
    if floor is None:
        floor = POLE_FLOOR_REL * contour.spec.epsilon
    for pole in integrand.poles:
        dist = contour_distance(pole, contour.spec)
        if dist < floor:
            raise PoleProximityError(
                f"pole {pole:.6g} sits {dist:.3g} from the contour "
                f"(floor {floor:.3g}); choose a different contour"
            )

    f = integrand.f
    tail = _tail_estimate(contour, f)
    nodes_used = 2
    counter = itertools.count()
    heap: list = []
    total = 0.0 + 0.0j
    total_est = tail
    for panel in contour.panels:
        if nodes_used + _EVALS_PER_PANEL > node_budget:
            raise QuadratureError(
                f"node budget {node_budget} exhausted during initial panel sweep"
            )
        val, est = _eval_panel(panel, f)
        nodes_used += _EVALS_PER_PANEL
        total += val
        total_est += est
        heapq.heappush(heap, (-est, next(counter), panel, val, est))

    while total_est > tol and heap:
        if nodes_used + 2 * _EVALS_PER_PANEL > node_budget:
            raise QuadratureError(
                f"estimated error {total_est:.3g} > tol {tol:.3g} with node "
                f"budget {node_budget} exhausted ({nodes_used} nodes used)"
            )
        _, _, panel, val, est = heapq.heappop(heap)
        left, right = panel.split()
        lv, le = _eval_panel(left, f)
        rv, re_ = _eval_panel(right, f)
        nodes_used += 2 * _EVALS_PER_PANEL
        total += lv + rv - val
        total_est += le + re_ - est
        heapq.heappush(heap, (-le, next(counter), left, lv, le))
        heapq.heappush(heap, (-re_, next(counter), right, rv, re_))

    if not math.isfinite(total_est) or total_est > tol:
        raise QuadratureError(f"error estimate {total_est:.3g} did not reach tol {tol:.3g}")
    return Evaluation(value=total, est_error=total_est, method="quadrature")
