# coding: utf-8

# # Complex structures of weakly non-nilpotent type
#
# A complex structure is given by complex structure equations for a (1,0)-coframe
# w1..w4. In the output "w1~3" stands for w^1 ^ conj(w^3).

from nlakit.catalog import (
    GenericExtParams,
    build_generic,
    build_snn6,
    build_wnn,
    realify_table1,
    reduce_to_normal_form,
)
from nlakit.cpxstruct import check_intertwiner, induced_quotient, j_compatible_series, nijenhuis, realify
from nlakit.exactnum import Gauss, fmt


# # 1. The normal form

p = build_wnn((1, 1, 1, 2, Gauss(3, 1)))
print(p.render())
print(p.render("tex").splitlines()[3])

# parameters outside the admissible branches are refused
try:
    build_wnn((0, 1, 1, 2, 0))
except Exception as ex:
    print(type(ex).__name__, ":", ex)


# # 2. Real algebra and J
#
# w^k = e^{2k-1} + i e^{2k} gives a real basis with J e1 = e2.

g, J = realify(build_wnn((0, 1, 1, 1, 0)))
print(g.render())
print("Nijenhuis tensor vanishes:", nijenhuis(g, J) == {})


# # 3. The J-compatible series
#
# a_1(J) is spanned by the real and imaginary parts of Z4 and the series stops there.

flag, jt = j_compatible_series(g, J)
print(jt.short, jt.series_dims, "t =", jt.t)
print("a_1 basis:", [[str(x) for x in v] for v in flag.terms[1].vectors()])


# # 4. Quotient by a_1(J)
#
# The quotient is 6-dimensional with a strongly non-nilpotent structure and
# matches the explicit 6-dimensional family.

h, Jq, _ = induced_quotient(g, J, 1)
print(h.render(), j_compatible_series(h, Jq)[1].short)
print("equals the 6-dim family:", (h, Jq) == build_snn6(0, 1))


# # 5. The real table
#
# Each tuple goes through its row's basis change and must land on the named
# algebra verbatim.

for t in [(0, 1, 0, 0, 0), (1, -1, 0, 0, 1), (0, 1, 1, 0, 1), (0, 1, 1, 1, Gauss(2, 3)), (1, 1, 1, 2, Gauss(1, 1))]:
    _, _, name = realify_table1(t)
    print(t, "->", name)


# # 6. Reduction to the normal form
#
# The rotations must be Gaussian rational, so we feed Pythagorean angles.

gp = GenericExtParams(0, 1, 0, 25, Gauss(-7, -24))
q, lam = reduce_to_normal_form(gp)
print(gp, "->", q)
for row in lam:
    print("   ", "  ".join(f"{fmt(x):>14}" for x in row))
print("certified:", check_intertwiner(build_generic(gp), build_wnn(q), lam)[0])


# # 7. Intertwiners
#
# Same parameters but opposite delta: the identity fails in the dw3 slot.

ok, res = check_intertwiner(build_wnn((0, 1, 1, 1, 0)), build_wnn((0, -1, 1, 1, 0)), [[int(i == j) for j in range(4)] for i in range(4)])
print(ok, [r.render() for r in res])

# a diagonal rotation by 3/5 + 4/5 i moves (A, B) to (A l44 / l11^2, B l44)
u, l44 = Gauss("3/5", "4/5"), Gauss(2, 1)
lam = [[u, 0, 0, 0], [0, u, 0, 0], [0, 0, 1, 0], [0, 0, 0, l44]]
src = GenericExtParams(0, 1, 0, l44 / (u * u), 3 * l44)
print(check_intertwiner(build_generic(GenericExtParams(0, 1, 0, 1, 3)), build_generic(src), lam)[0])
