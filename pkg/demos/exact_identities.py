"""Polynomial certificates in exact rational arithmetic.

Nothing here touches a float.  The sixth derivative of the KL condition
reduces to a quartic that is written as a sum of nonnegative pieces, and the
degree-10 polynomial in alpha is split into products of (2 - a) and (a + 1)
with quotients nonnegative on [-1, 2].
"""

from pinskerf import polycert as pc

kl = pc.kl_sixth_identity()
print("KL quartic certificate:", "ok" if kl.passed else "FAILED")
for key in ("a4", "a2", "a0", "shift1", "shift2"):
    print(f"  {key:6s} = {kl.values[key]}")

P = pc.p10()
print("\nP10(alpha) =", P)
print("identity check:", "ok" if pc.verify_p10_identity().passed else "FAILED")

res = pc.positivity_division_search(P)
print("\nDivision search, first divisor (2-a)^%d (a+1)^%d" % res.first_divisor)
for coeff, m, n in res.terms:
    print(f"  ({coeff}) * (2-a)^{m} (a+1)^{n}")
print("  residual:", res.residual)
print("expands back to P10:", res.expand() == P)

chain = pc.alpha_appendix_chain()
print("\nalpha chain:")
for name, ok in chain.checks.items():
    print(f"  {'ok ' if ok else 'BAD'} {name}")
