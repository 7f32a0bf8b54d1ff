"""Exact-arithmetic certificates for crossed products and their invariants.

The subpackages split by object: permutation groups and generating
tuples, integral lattice presentations, parameter-count bounds, factor
sets with wedge coordinates, exact polynomial and quotient-field
arithmetic, crossed-product algebras with decomposition certificates,
and trace forms with replayable equivalence moves.
"""

__version__ = "0.1.0"
