"""Distinguishing the spaces H_{f_r} by the semi-invariant ratio at the crossing.

Each f_r glues 1 to -1.  If two of these spaces were isomorphic, the
isomorphism would be induced by a disc automorphism fixing {1, -1}, and that
automorphism has to equalise A(1)/A(-1).  There are two candidates.  We check
that neither one makes the pseudo-metrics agree along the matched paths.
"""

import numpy as np

from pickdisc import candidate_automorphisms, invariant_ratio, make_f_r, matched_path_limits
from pickdisc.functions import mobius_fixing_pm1

for r in (0.1, 0.25, 0.5, 0.75, 0.9):
    print(f"r = {r:<5} A(1)/A(-1) = {invariant_ratio(make_f_r(r)).value:.12f}   (1+r)/(1-r) = {(1 + r) / (1 - r):.12f}")

f, g = make_f_r(0.5), make_f_r(0.25)
c = candidate_automorphisms(f, g)
print(f"\ncandidates for f_0.5 vs f_0.25: alpha = {c.alpha:.12f}, beta = {c.beta:.12f}")
print("ratio of g after alpha:", invariant_ratio(g.compose(c.alpha_map)).value)

rep = matched_path_limits(f, g, t_min=1e-6)
print(f"\nd_f^2 along z_t: {rep.extrapolated_df:.2e}  (tends to 0)")
print(f"d_g^2 along w_t: {rep.extrapolated_dg:.6f}  vs predicted {rep.predicted_dg_limit:.6f} = 4/49")
for t, df, dg in list(zip(rep.t_samples, rep.df_sq, rep.dg_sq))[::4]:
    print(f"  t = {t:.3e}   d_f^2 = {df:.3e}   d_g^2 = {dg:.6f}")

# any other fixing map of the family gives the closed form 1 - 4ab/(a+b)^2
for a in (0.0, 0.2, 0.5):
    h = g.compose(mobius_fixing_pm1(a))
    rep = matched_path_limits(f, h, t_min=1e-5)
    print(f"fixing map a = {a}: predicted {rep.predicted_dg_limit:.6f}, extrapolated {rep.extrapolated_dg:.6f}")
