"""
Extended-precision oracle and the frozen regression corpus
==========================================================

The oracle resums the defining series in arbitrary precision with a
certified geometric tail bound.  It shares no code with the double
evaluators, which makes it the referee: a corpus of oracle values is
frozen into the package and every evaluator is replayed against it.
"""

import mpmath as mp

from ml2v import eval_auto, load_corpus, oracle_eval, validate_params

# a certified 30-digit value; the tail bound is part of the contract
params = validate_params(1.2, 0.9, 1.0)
ov = oracle_eval(-2.0 + 1.0j, 1.5 - 0.5j, params, digits=30)
with mp.workdps(35):
    print("E(-2+i, 1.5-0.5i) at (1.2, 0.9, 1):")
    print(f"  value      = {mp.nstr(ov.value, 30)}")
    print(f"  tail bound = {ov.tail_bound:.2e}")

# digits is a real knob: 30- and 50-digit runs must agree to the looser
# certificate, which is how the corpus was validated before freezing
v30 = oracle_eval(-2.0 + 1.0j, 1.5 - 0.5j, params, digits=30)
v50 = oracle_eval(-2.0 + 1.0j, 1.5 - 0.5j, params, digits=50)
with mp.workdps(60):
    d = abs(v30.value - v50.value) / abs(v50.value)
    print(f"\n30 vs 50 digit relative agreement: {mp.nstr(d, 3)}")

# the packaged corpus: 100+ frozen records spanning the parameter sets
records = load_corpus()
print(f"\npackaged corpus: {len(records)} records")
sets = sorted({(r.alpha, r.beta, r.mu) for r in records})
for s in sets:
    n = sum(1 for r in records if (r.alpha, r.beta, r.mu) == s)
    print(f"  alpha={s[0]:<4} beta={s[1]:<4} mu={s[2]:<12} {n:3d} records")

# replay a slice through the automatic dispatcher
print("\nreplaying 10 records through eval_auto:")
worst = 0.0
for rec in records[:10]:
    ev = eval_auto(rec.x, rec.y, rec.params(), tol=1e-8)
    delta = abs(ev.value - rec.value())
    worst = max(worst, delta)
    print(f"  x={rec.x:>12} y={rec.y:>12} {ev.method:>10}  |delta| = {delta:.2e}")
print(f"worst |delta| = {worst:.2e}")
