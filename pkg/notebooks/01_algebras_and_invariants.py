# coding: utf-8

# # Nilpotent Lie algebras and their invariants
#
# An algebra is given by the differentials of its dual basis. "(0,0,0,12,23,14-35,0,0)"
# says de1 = de2 = de3 = 0, de4 = e12, de5 = e23, de6 = e14 - e35 and so on.
# Everything below is exact: rationals and Gaussian rationals only.

from nlakit.catalog import TABLE2_NAMES, builtin
from nlakit.forms import KForm
from nlakit.invariants import betti_numbers, casimir_count, distinguish, fingerprint, nd_invariant
from nlakit.liealg import ascending_type, descending_type, direct_sum, parse_algebra, LieAlgebra


# # 1. Parsing

g = parse_algebra("(0,0,0,12,23,14-35,0,0)", name="f1")
print(g)
print("same as the builtin f1:", g == builtin("f1"))

# coefficients go before a dot, fractions are allowed
h = parse_algebra("(0,0,0,2.13)")
print(h.render(), " step", h.step())

# Jacobi is checked on the way in, the failure names the offending d^2
try:
    parse_algebra("(0,0,12,13+24)")
except Exception as ex:
    print(type(ex).__name__, ":", ex)


# # 2. Central series
#
# ascending type lists dim g_1, dim g_2, ...; descending type dim g^0, g^1, ...

for name in ("f1", "f6", "f8"):
    a = builtin(name)
    print(f"{name:5} ascending {ascending_type(a)}  descending {descending_type(a)}")


# # 3. Products
#
# f1 and f2 split off an abelian R^2

r2 = LieAlgebra.abelian(2)
print(direct_sum(builtin("h19^-"), r2) == builtin("f1"), direct_sum(builtin("h26^+"), r2) == builtin("f2"))


# # 4. Betti numbers
#
# Chevalley-Eilenberg cohomology by exact ranks. Nilpotent algebras are
# unimodular, so the sequence is a palindrome and the Euler characteristic is 0.

b = betti_numbers(builtin("f3"))
print("f3:", b, " euler", sum((-1) ** k * x for k, x in enumerate(b)))


# # 5. Decomposable exact 2-forms
#
# n_d is the dimension of the span of the exact 2-forms alpha with alpha^alpha = 0.
# Rational witnesses give a lower bound; enumerations over F_7, F_11, F_13
# confirm it from above.

r = nd_invariant(builtin("f1"))
print("f1: n_d =", r.value, r.confidence)
for w in r.witnesses:
    print("   witness", w.render(), " w^w =", (w ^ w).render() or "0")

# on f4^1 there is one more than the number of decomposable de^k
a = (KForm.gen(8, 0) + KForm.gen(8, 1)) ^ (KForm.gen(8, 3) + KForm.gen(8, 5))
print("f4^1 extra witness", a.render(), "decomposable:", not (a ^ a))
print("f4^1 n_d =", nd_invariant(builtin("f4^1"), strict=False).value)


# # 6. Casimir count
#
# f6 and f8 agree on everything above. The generic rank of the coadjoint
# matrix separates them.

for name in ("f6", "f8"):
    nI, C = casimir_count(builtin(name))
    print(f"{name}: n_I = {nI}")


# # 7. The whole table

print(f"{'':6}{'asc':18}{'desc':18}{'b1..b4':18}n_d n_I")
for name in TABLE2_NAMES:
    fp = fingerprint(builtin(name))
    print(f"{name:6}{str(fp.ascending):18}{str(fp.descending):18}{str(fp.betti):18}{fp.n_d:3} {fp.n_I:3}")

print(distinguish(builtin("f5^0"), builtin("f5^1")))
print(distinguish(builtin("f7^0"), builtin("f7^1")))
