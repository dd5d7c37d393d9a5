"""Exact tools for positive definite ternary quadratic lattices."""

from .lattices import ClassRep, RationalLattice, TernaryLattice

__all__ = ["TernaryLattice", "RationalLattice", "ClassRep"]
