"""Computational workbench for finite-dimensional Hopf algebras given by
structure constants: Yetter-Drinfeld categories, unimodularity checks,
Frobenius algebras in YD, handlebody-tangle invariants and the coend Hopf
algebra of a quasitriangular module category.  All arithmetic is exact.
"""

__version__ = "0.1.0"
