# coding: utf-8

# # Pseudo-Kahler metrics
#
# A pseudo-Kahler structure is a closed real (1,1)-form F with F^4 != 0. The
# metric is g(x, y) = F(Jx, y).

from nlakit.catalog import SnNParams, build_snn, build_wnn, builtin
from nlakit.cpxstruct import CoframePresentation
from nlakit.exactnum import signature_symmetric
from nlakit.pseudokahler import (
    PKSolution,
    complex_symplectic_solve,
    curvature,
    levi_civita,
    neutral_matrix,
    parallel_volume_check,
    pk_solve,
    theorem_family,
)
from nlakit.reproduce import pk_algebras


# # 1. Closed (1,1)-forms
#
# dF = 0 for a real (1,1)-form reduces to a linear system in 16 real unknowns.

p = build_wnn((0, 1, 1, 1, 0))
res = pk_solve(p)
print("kernel dim", res.kernel_dim)
print("witness", res.witness.form.form().render())
print("signature", res.witness.signature)

# eps = 1 and family I never work: F^4 vanishes identically on the kernel
print(pk_solve(build_wnn((1, 1, 1, 1, 0))).certificate)
print(pk_solve(build_snn(SnNParams("I", delta=1, eps=0, nu=0, a=1, b=0))).certificate)


# # 2. Signatures
#
# Neutral for delta r s < 0. The matrix printed with these formulas is -g in
# our convention, so the two counts swap.

for r, s in [(1, -1), (1, 1)]:
    sol = PKSolution(build_wnn((0, 1, 1, 0, 0)), theorem_family(1, 0, r, s, 0, 0))
    printed = signature_symmetric(neutral_matrix(1, 0, r, s, 0, 0))[:2]
    print(f"r={r} s={s}: g = F(J.,.) has {sol.signature}, the negated matrix has {printed}")


# # 3. Levi-Civita connection and curvature

sol = PKSolution(p, theorem_family(1, 1, 2, 3, 1, 5))
conn = levi_civita(sol)
# labels are 1-based, negative means barred
for u, v in [(1, 1), (1, -1), (2, 3), (-1, 4)]:
    print(f"nabla({u}) ({v}) =", conn.render(u, v))
cv = curvature(sol, conn)
print("R(Z1, Z1bar, Z2, Z2bar) =", cv(1, -1, 2, -2), " (= -delta r)")
print("Ricci-flat", cv.ricci_flat, " flat", cv.flat)
print("w1234 parallel", parallel_volume_check(sol, conn))


# # 4. No complex symplectic forms

s = complex_symplectic_solve(p)
print("WnN:", s.nondegenerate, "forced zero:", s.forced_zero)
torus = CoframePresentation.from_terms(4, [{}] * 4)
print("torus:", complex_symplectic_solve(torus).example.render())


# # 5. Which algebras carry one
#
# All five have b1 = 3.

from nlakit.invariants import betti_numbers

found = pk_algebras()
for name, ok in sorted(found.items()):
    g = builtin(name)
    print(f"{name:6} pK {ok!s:5}  step {g.step()}  b1 {betti_numbers(g)[1]}")
