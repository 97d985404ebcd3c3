"""wedgekit: exact Lie-wedge computation for standard-subspace semigroups.

The package computes, over exact rational arithmetic, the wedge of
infinitesimal generators of the unitary endomorphism semigroup attached to a
modular datum (Lie algebra, involution, modular element, invariant positive
cone), cross-checks the closed form against a numeric Wick-rotation oracle,
and reproduces the associated operator inequalities at matrix scale.
"""

__version__ = "0.1.0"
