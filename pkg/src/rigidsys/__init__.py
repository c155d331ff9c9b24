"""Quantum Schubert calculus, the multiplicative eigenvalue polytope and rigid local systems."""

__version__ = "0.1.0"
