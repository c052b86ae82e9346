"""Exact algebra for triviality and rigidity of deformations of function germs on weighted-homogeneous hypersurfaces."""

__version__ = "0.1.0"
