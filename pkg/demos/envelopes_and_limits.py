"""How sharp are the bounds, and where do they stop holding?

Compares the binary KL envelope with the four-term bound from the
literature, extrapolates the constants, looks at Renyi divergence either side
of alpha = 1, and shows that the triangular-type inequality Delta_nu >= V^(2 nu)
fails without the factor 2^(1 - 2 nu).
"""

import numpy as np

from pinskerf import divergence as dv
from pinskerf import envelope as env
from pinskerf import generators as gen
from pinskerf.dist import Distribution, variational_distance

kl = gen.kl()
print("  v     envelope    four-term bound")
for v in (0.25, 0.5, 1.0, 1.5, 1.9):
    e = env.lower_envelope(kl, v)
    print(f"  {v:4.2f}  {e.min_divergence:.7f}  {float(env.topsoe_bound(v)):.7f}")

s2 = env.tightness_sweep_second(kl)
s4 = env.tightness_sweep_fourth(kl)
print(f"\nD/V^2 -> {s2.limit:.6f}   (D - V^2/2)/V^4 -> {s4.limit:.6f}  (1/36 = {1/36:.6f})")

print("\nRenyi, alpha/2 V^2 as a lower bound:")
for a in (0.5, 0.9, 1.1, 1.3):
    r = env.renyi_violation_search(a)
    where = f" at p={r.p:.4f}, v={r.v:.3f}" if r.status == "violated" else ""
    print(f"  alpha={a}: {r.status}{where}")

# two disjoint point masses: Delta_nu = 2, V = 2
P, Q = Distribution(np.array([1.0, 0.0])), Distribution(np.array([0.0, 1.0]))
V = variational_distance(P, Q)
for nu in (2, 3):
    d = dv.triangular_nu(nu, P, Q)
    print(f"\nDelta_{nu} = {d:g}, V^{2*nu} = {V**(2*nu):g}, 2^(1-2nu) V^{2*nu} = {2.0**(1-2*nu) * V**(2*nu):g}")

print()
for line in env.conjecture_log6().lines():
    print(line)
