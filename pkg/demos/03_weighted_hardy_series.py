"""Reciprocal series, complete Pick tests and renewal limits for rotation-invariant kernels."""

from fractions import Fraction

from pickdisc import (
    bergman_coeffs,
    coeffs_from_reciprocal,
    complete_pick_check,
    embedding_dimension,
    reciprocal_coeffs,
    renewal_limit,
    szego_coeffs,
    weighted_hardy_coeffs,
)

print("Szego r_n:", [str(x) for x in reciprocal_coeffs(szego_coeffs(10)).r[:5]])
print("Bergman r_n:", [str(x) for x in reciprocal_coeffs(bergman_coeffs(10)).r[:5]], "->", complete_pick_check(bergman_coeffs(10)).kind)

for s in (-0.5, -1.0, -2.0):
    c = weighted_hardy_coeffs(s, 200)
    r = reciprocal_coeffs(c).r
    print(f"s = {s}: r_1..4 = {[round(float(x), 6) for x in r[:4]]}, sum r = {sum(r):.4f}, "
          f"dimension {embedding_dimension(c).kind}")

# exact rational Dirichlet coefficients
print("Dirichlet r_n exactly:", [str(x) for x in reciprocal_coeffs(weighted_hardy_coeffs(-1, 8, exact=True)).r[:5]])

# finitely many nonzero r_n embed in a ball of that dimension
c = coeffs_from_reciprocal([Fraction(1, 3), 0, Fraction(1, 6), Fraction(1, 7)], 100)
print("\nfinite r:", embedding_dimension(c))

for r in ([0.5, 0.5], [0.2, 0.3, 0.5], [Fraction(1, 2 ** n) for n in range(1, 201)]):
    c = coeffs_from_reciprocal(r, 200)
    rep = renewal_limit(c)
    print(f"mu = {float(rep.mu):.6f}: c_200 = {float(c.values[200]):.10f}, 1/mu = {float(rep.limit):.10f}")
