"""limsup_{t -> 0} |c(t) - 1| for a scalar cosine is 0, 2 or infinity.

A continuous family lands in 0.  The Hamel cos family sampled along
convergents of sqrt2 reaches 2 (already near denominator 2378).  The
Hamel cosh family blows up.
"""
from cosinelab import Hamel, HamelSpec, SamplingPlan, ScalarCos, limsup_estimate

cases = [
    ("cos(3t)", ScalarCos(3), None),
    ("Hamel cos", Hamel(), SamplingPlan.convergent(30)),
    ("Hamel cosh", Hamel(HamelSpec(function="cosh")), SamplingPlan.convergent(30)),
]
for name, fam, plan in cases:
    rep = limsup_estimate(fam, plan)
    print(f"{name:11s} branch={rep.branch:9s} witness gap={rep.witness.gap:.4g} at {rep.witness.arg}")
    if rep.first_blowup is not None:
        print(f"{'':11s} first sample above 1e6: {rep.first_blowup.arg}, gap {rep.first_blowup.gap:.3g}")

# %% the sup profile over shrinking windows for the Hamel cos family
rep = limsup_estimate(Hamel())
for delta, sup in rep.sup_profile[:14]:
    print(f"  |t| <= {delta:.2e}: sup |c - 1| = {sup:.4f}")
