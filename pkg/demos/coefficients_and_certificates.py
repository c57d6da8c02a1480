"""From a generator to a certified Pinsker-type bound.

Walks the alpha family of relative information: exact expansion
coefficients at u = 1, then the derivative conditions that turn them
into D_f >= c2 V^2 + c4 V^4, then a random spot check of the bound itself.
Run with ``python3 demos/coefficients_and_certificates.py``.
"""

from fractions import Fraction

import numpy as np

from pinskerf import certify, divergence, envelope, generators as gen

print("Exact coefficients (c2, w2, c4, w4):")
for name in ("kl", "jeffreys", "chi2", "hellinger"):
    c = gen.coefficients(gen.builtin(name))
    print(f"  {name:10s}", *(str(x) for x in c.as_tuple()))

# the closed forms for the alpha family; at alpha = -1 and 2 c4 vanishes
for a in (Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2)):
    c = gen.coefficients(gen.rel_info_alpha(a))
    print(f"  alpha={str(a):5s}", *(str(x) for x in c.as_tuple()))

print("\nSecond-order condition across alpha:")
for a in (Fraction(-1), Fraction(0), Fraction(1), Fraction(2), Fraction(5, 2)):
    r = certify.check_second_order_derivative_condition(gen.rel_info_alpha_family(a))
    extra = f" witness u={r.witness_u:g}" if r.witness_u is not None else ""
    print(f"  alpha={str(a):4s} {r.status.value:18s} margin={r.margin:+.2e}{extra}")

print("\nFourth-order condition:")
for name in ("kl", "jeffreys"):
    r = certify.check_fourth_order_derivative_condition(gen.builtin(name))
    print(f"  {name:10s} {r.status.value} margin={r.margin:+.2e}")
r = certify.check_fourth_order_derivative_condition(gen.rel_info_alpha(3))
print(f"  alpha=3    {r.status.value} at u={r.witness_u:g}")

# chi2 has c4 = 0, so w4 is 0/0 and the condition cannot even be stated
try:
    certify.check_fourth_order_derivative_condition(gen.chi2())
except Exception as exc:
    print(f"  chi2       not applicable: {exc}")

print("\nSpot check of D >= c2 V^2 + c4 V^4 on random pairs:")
p, q = divergence.stack_pairs(envelope.random_pairs(5000, np.random.default_rng(7)))
V = np.abs(p - q).sum(axis=1)
for name in ("kl", "jeffreys"):
    f = gen.builtin(name)
    c = gen.coefficients(f)
    D = divergence.f_divergence_rows(f, p, q)
    slack = D - (float(c.c2) * V**2 + float(c.c4) * V**4)
    print(f"  {name:10s} smallest slack {slack.min():.3e} over {len(V)} pairs")
