"""Exact Clifford, Poisson and quantization algebra of symplectic planes."""

__version__ = "0.1.0"
