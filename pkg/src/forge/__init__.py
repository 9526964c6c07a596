"""Exact checks for Lie bialgebras, polyubles and mixed-product Poisson structures."""

__version__ = "0.1.0"
