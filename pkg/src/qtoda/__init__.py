"""Exact computations for quantum Toda integrals of ax+b algebras."""

__version__ = "0.1.0"
