"""ufdlab: exact commutative-algebra computations at desk scale.

Subpackages:
  coeff           exact integer / rational / prime-field arithmetic
  poly            sparse (Laurent) polynomials, gradings, ring maps
  groebner        Buchberger engine, ideal quotients, saturation, oracles
  constructions   presented-ring builders and hypothesis checkers
  omega           the graded rewriting system on x, z0, z1, ...
  counterexample  the filtered-union ring over k[x,y] and its order certificates
  claims / cli    machine-readable claim runner
"""

__version__ = "0.1.0"
