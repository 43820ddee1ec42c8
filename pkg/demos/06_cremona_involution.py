"""
The reciprocal Cremona involution and its ruling swaps
======================================================

The involution [a1/x1 : a2/x2 : a3/x3 : a1 a2 a3/x4] of projective
3-space, in cleared polynomial form, preserves a family of quadrics
and swaps the two rulings of each smooth member.
"""

from autcert.cremona import (
    QuadricForm,
    conjugate_translation,
    contraction_check,
    cremona_map,
    cross_ratio,
    find_swap_specializations,
    involution_cofactor,
    preserves_quadric,
    reciprocal_display,
    verify_pij_swap,
)
from autcert.scalars import INFINITY, ProjValue, RatFunc

tau = cremona_map()
print("map:", reciprocal_display())

# Substituting the map into the quadric returns an exact cofactor.
q = QuadricForm.standard()
print("quadric: ", q.poly)
print("cofactor:", preserves_quadric(tau, q.poly))

# Composing the map with itself is the identity times the square.
print("involution cofactor:", involution_cofactor(tau))

# Each coordinate plane contracts to a coordinate point.
for i in (1, 2, 3, 4):
    point = contraction_check(tau, i)
    print(f"plane x{i} = 0 ->", "[" + " : ".join(str(v) for v in point) + "]")

# At rational parameter values the two rulings are defined over the
# rationals and the involution swaps them, moving all 12 marked points.
for alpha in find_swap_specializations(seed=0, want=3):
    report = verify_pij_swap(alpha)
    print("alpha", alpha, "passes:", report.passed, "swaps:", report.swaps_checked)

# Some specializations need one square root; the report records it.
ext = verify_pij_swap((1, 1, 1), allow_quadratic_extension=True)
print("(1,1,1) extension square:", ext.extension_square, "passes:", ext.passed)

# Cross-ratios of marked quadruples distinguish the two pencils.
t = ProjValue.finite(RatFunc.var("t"))
one = ProjValue.finite(RatFunc(1))
zero = ProjValue.finite(RatFunc(0))
print("cross-ratio (1, t, inf, 0):", cross_ratio((one, t, INFINITY, zero)))

# Conjugating the unit translation by scalings produces decaying shifts.
print("conjugated shift, n = 2:", conjugate_translation(2).b)
