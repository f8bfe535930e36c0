"""Exact cohomology computations for Hopf algebras."""

__version__ = "0.1.0"
