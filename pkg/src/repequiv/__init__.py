"""Exact computations with modules over finite-dimensional algebras, relative
tilting data and stable categories of repetitive algebras."""

__version__ = "0.1.0"
