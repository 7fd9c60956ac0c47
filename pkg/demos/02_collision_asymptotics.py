"""Expansion constants at a crossing and the bound they give on |h(1) - h(-1)|."""

from pickdisc import collision_bound_check, collision_data, make_f_r

r = 0.5
f = make_f_r(r)
d = collision_data(f)
k = (1 + r) / (1 - r)
print(f"computed: A = {d.A:.10g}  B = {d.B:.10g}  C = {d.C:.10g}  D = {d.D:.10g}  E = {d.E:.10g}")
print("by hand:  A =", 2 / (1 - r), " B =", 2 / (1 + r), " C =", 2 * (1 + k * k), " D =", 2 * (1 + 1 / k ** 2), " E = -4")
print("bound constant", d.bound_constant, "against r^2 =", r * r)

# second-order expansion of 1 - <f(1-x), f(-1+y)>
x = y = 1e-3
lhs = f.one_minus_inner(1 - x, -1 + y)
rhs = d.A * x + d.B * y + d.E * x * y - d.F.conjugate() * x * x - d.G * y * y
print(f"\nexpansion residual at h = 1e-3: {abs(lhs - rhs):.2e}  (third order)")

# unit kernel function at v: the gap shrinks, the kernel difference tends to the bound
for v in (0, 0.3, 0.5 - 0.2j):
    rep = collision_bound_check(f, v)
    print(f"v = {v}: final gap^2 {rep.final_gap_sq:.2e}, ||k_z - k_w||^2 -> {rep.kernel_difference_sq[-1]:.6f}")
