"""
Hankel-contour representations and deformation invariance
=========================================================

Away from small arguments E(x, y) is recovered from a keyhole contour
integral plus residues at the poles of the integrand

    f(zeta) = exp(zeta^d) zeta^p / ((zeta^(1/beta) - x)(zeta^(1/alpha) - y)),

d = 1/(alpha beta).  Which residues appear depends on where the pole
preimages of x and y sit relative to the contour: the four routes
lemma1 (both outside), lemma2 (y inside), remark1 (x inside) and
lemma3 (both inside) must all produce the same number, and the value
must not move when the contour is deformed within its admissible
window.
"""

from ml2v import (
    ContourSpec,
    SeriesBudget,
    admissible_theta_window,
    choose_contour,
    classify_pair,
    eval_double_series,
    eval_with_contour,
    pole_images,
    validate_params,
)

params = validate_params(0.5, 0.8, 1.0)
x, y = -3.0, 2.0

# the solver picks a contour whose radius clears every pole preimage
spec = choose_contour(x, y, params)
print(f"auto contour: epsilon = {spec.epsilon:.4g}, theta = {spec.theta:.4g}")
print(f"pole preimages of x: {[f'{z:.4g}' for z in pole_images(x, params.beta)]}")
print(f"pole preimages of y: {[f'{z:.4g}' for z in pole_images(y, params.alpha)]}")
print(f"route for this contour: {classify_pair(x, y, params, spec)}")

ref = eval_double_series(x, y, params, SeriesBudget(tol=1e-13)).value
print(f"\nseries reference: {ref:.15g}")

# sweep the contour radius: a wide arc swallows the y pole, so the
# route changes from lemma2 to lemma1, while the value stays put
print(f"\n{'epsilon':>8} {'route':>8} {'value':>22} {'|diff vs series|':>17}")
for eps in (0.25, 1.0, 3.0):
    s = ContourSpec(eps, spec.theta)
    ev = eval_with_contour(x, y, params, s, tol=1e-9)
    print(f"{eps:8.2f} {ev.method:>8} {ev.value.real:22.15f} {abs(ev.value - ref):17.2e}")

# deformation invariance: two admissible contours, one verdict
a = eval_with_contour(x, y, params, spec, tol=1e-10)
b = eval_with_contour(
    x, y, params, ContourSpec(spec.epsilon * 1.9, spec.theta * 0.96), tol=1e-10
)
print(f"\ndeformed-contour agreement: |a - b| = {abs(a.value - b.value):.2e}")

# all four routes, one parameter set: which arguments sit inside the
# integration wedge decides who contributes residues
params = validate_params(1.2, 0.9, 1.0)
lo, hi = admissible_theta_window(params)
theta = hi * (1.0 - 1e-3)
cases = [
    (-2.0 + 0j, -2.0 + 0j, 2.5),   # both outside      -> lemma1
    (-2.0 + 0j, 3.0 + 0j, 2.5),    # only y inside     -> lemma2
    (2.0 + 0j, -2.0 + 0j, 1.0),    # only x inside     -> remark1
    (-3.0 + 0j, 2.0 + 0j, 1.0),    # both inside       -> lemma3
]
print(f"\n{'x':>6} {'y':>6} {'epsilon':>8} {'route':>8} {'|diff vs series|':>17}")
for x, y, eps in cases:
    ev = eval_with_contour(x, y, params, ContourSpec(eps, theta), tol=1e-9)
    ref = eval_double_series(x, y, params, SeriesBudget(tol=1e-13)).value
    print(f"{x.real:6.1f} {y.real:6.1f} {eps:8.2f} {ev.method:>8} {abs(ev.value - ref):17.2e}")

# complex arguments work the same way
x, y = 2.0 + 2.0j, -1.0 - 3.0j
ev = eval_with_contour(x, y, params, choose_contour(x, y, params), tol=1e-9)
ref = eval_double_series(x, y, params, SeriesBudget(tol=1e-13)).value
print(f"\ncomplex point ({x}, {y}):")
print(f"  contour {ev.method}: {ev.value:.12g}")
print(f"  |diff vs series|  : {abs(ev.value - ref):.2e}")
