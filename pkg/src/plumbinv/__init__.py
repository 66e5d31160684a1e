"""Exact invariants of involutions on plumbed 3-manifolds.

The package computes classical invariants of plumbed 3-manifolds and
branched double covers (linking forms, mu-bar, lens-space correction
terms) and runs an exact constraint-propagation engine over the
equivariant delta-invariant sequences attached to an involution.  All
arithmetic is exact: integers, ``fractions.Fraction`` and residues, no
floating point.
"""

__version__ = "0.1.0"
