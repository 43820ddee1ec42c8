"""
Exact scalars: polynomials, rational functions, Laurent series
===============================================================

Everything downstream runs on this tower.  No floats appear anywhere:
coefficients are fractions, and linear algebra is fraction-free.
"""

from fractions import Fraction

from autcert.scalars import (
    LaurentT,
    MultiPoly,
    QuadExt,
    RatFunc,
    matrix_rank_det,
    parse_poly,
    rational_sqrt,
)

# Multivariate polynomials print in graded lexicographic order.
p = parse_poly("x^2 - 2*x*y + y^2")
q = parse_poly("x - y")
print("p       =", p)
print("p / q   =", p.divide_rem(q)[0])

# Rational functions normalize to a monic denominator automatically.
t = RatFunc.var("t")
f = (t**2 - RatFunc(1)) / (t - RatFunc(1))
print("f       =", f)

# Laurent polynomials in t carry negative exponents exactly.
shift = LaurentT({-4: Fraction(3), 0: Fraction(-1, 2)})
print("laurent =", shift)

# Square roots stay symbolic when irrational: delta^2 = -3 here.
print("sqrt 9/4 =", rational_sqrt(Fraction(9, 4)))
root = QuadExt.root(-3)
print("delta^2  =", root * root)

# Fraction-free determinants work over any of these scalars.
rows = [
    [MultiPoly.var("x"), MultiPoly.const(1)],
    [MultiPoly.const(1), MultiPoly.var("x")],
]
rank, det = matrix_rank_det(rows)
print("det      =", det, "rank", rank)
