"""Octonionic realization of Cl_8, Hardy-space boundary operators on the upper
half-space of R^8, and numerical/exact verification scenarios."""

__version__ = "0.1.0"
