"""Exact-arithmetic certificates for a surface automorphism construction.

The library verifies, step by step and without floating point, the
computable content of a construction of a projective surface whose
automorphism group is discrete but not finitely generated.  It is
organized in independent layers:

* :mod:`autcert.scalars` -- exact rationals, multivariate polynomials,
  rational functions, Laurent polynomials, quadratic extensions, and
  fraction-free linear algebra over any of them;
* :mod:`autcert.lattice` -- integer row reduction (Hermite form), span
  membership with witnesses, orthogonal complements, ADE recognition,
  and exact signatures;
* :mod:`autcert.surface` -- labeled curve configurations with exact
  intersection pairings, involution bookkeeping, free-quotient
  pushforward, and a two-stage blow-up ledger;
* :mod:`autcert.fibration` -- elliptic fiber validation and Kodaira
  classification from weighted dual graphs, Euler numbers, and the
  Shioda-Tate rank count;
* :mod:`autcert.mwl` -- Mordell-Weil heights from local correction
  terms, torsion detection, and the scale/shift automorphisms of a
  singular fiber's smooth locus;
* :mod:`autcert.cremona` -- the reciprocal Cremona involution in
  cleared form, quadric preservation certificates, ruling swaps at
  rational specializations, cross-ratio tests, and Moebius conjugation;
* :mod:`autcert.fingen` -- escape certificates showing an additive
  group of Laurent polynomials admits no finite generating set;
* :mod:`autcert.pipeline` -- the staged certificate runner and its
  command line interface.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
