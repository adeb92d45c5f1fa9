"""Exact computations for r-matrix Poisson structures on modules over semisimple Lie algebras."""

__version__ = "0.1.0"
