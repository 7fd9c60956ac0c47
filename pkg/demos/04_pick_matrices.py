"""Pick matrices, Gram positivity and the kernel pseudo-metric."""

import numpy as np

from pickdisc import (
    DiscKernel,
    RotationInvariantKernel,
    gram_matrix,
    make_f_r,
    metric,
    pick_matrix,
    psd_report,
    szego_kernel,
    weighted_hardy_coeffs,
)

k = szego_kernel()
for targets in ([0, 0.5], [0, 0.6]):
    rep = pick_matrix(k, [0, 0.5], targets)
    print(f"Szego, 0 -> {targets[0]}, 0.5 -> {targets[1]}: min eigenvalue {rep.min_eigenvalue:+.4f}, psd {rep.psd}")

rng = np.random.default_rng(7)
pts = rng.uniform(0, 0.95, 8) * np.exp(2j * np.pi * rng.uniform(size=8))
for name, kk in [("Szego", k), ("Dirichlet", RotationInvariantKernel(weighted_hardy_coeffs(-1, 32))),
                 ("f_0.5", DiscKernel(make_f_r(0.5)))]:
    print(f"{name:10s} Gram min eigenvalue {psd_report(gram_matrix(kk, pts)).min_eigenvalue:.3e}")

# the glued space cannot tell 1 from -1, so points near them stay close
kf = DiscKernel(make_f_r(0.5))
for t in (0.9, 0.99, 0.999):
    print(f"d_f({t}, {-t}) = {metric(kf, t, -t):.6f}   Szego {metric(k, t, -t):.6f}")
