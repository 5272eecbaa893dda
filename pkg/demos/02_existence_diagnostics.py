#!/usr/bin/env python3
"""Deciding whether the staircase integral exists.

The integral of a beta-Hölder integrand against a path exists exactly when
the weighted Lévy areas between successive staircases are summable.  The
diagnostics module turns that criterion into finite-resolution reports.
"""

import numpy as np

import roughpath as rp

# A smooth path converges at any beta.
smooth = rp.gen_analytic("sine", 14)
print("sine path, beta=0.4:", rp.existence_report(smooth.pyramid(), 0.4).verdict)

# A Brownian path separates at beta = 1/2: summable above, divergent at or
# below (here the finite-resolution verdict reflects the trend).
bm = rp.gen_brownian(16, seed=1)
for beta in (0.7, 0.55, 0.4):
    rep = rp.existence_report(bm.pyramid(), beta)
    print(f"Brownian, beta={beta}: verdict={rep.verdict}, "
          f"last terms {np.round(rep.terms[-3:], 4)}")

# The designed divergence witness: Hölder-regular, yet its diagnostic grows
# without bound, so no amount of Hölder smoothness of the integrand helps.
witness = rp.gen_counterexample(0.3, 0.3, 18)
rep = rp.existence_report(witness.pyramid(), 0.3)
print("\ndivergence witness, beta=0.3:", rep.verdict,
      "| partial sums", np.round(rep.partial_sums[-4:], 2))
print("its Hölder-0.3 estimate stays bounded:",
      rp.holder_seminorm(witness, 0.3).seminorm_lower_bound)

# Interval functionals: the gap functional drives both a-posteriori error
# bounds and the scaling norm that classifies admissible drivers.
osc = rp.gen_oscillatory(0.45, 0.45, A=2.0, m_max=2, K=18)
gamma = 0.45 * 0.45 / 0.55
est = rp.scaling_norm(osc.pyramid(), 0.45, gamma, scan_depth=4)
print(f"\noscillatory path: scaling norm {est.value:.3f} attained on {est.argmax_interval}")
print("operator tail constant, linear path, beta=0.5:",
      rp.operator_tail_constant(rp.gen_analytic('linear', 16).pyramid(), 0.5),
      "(geometric tail closed form: 1.2071...)")
