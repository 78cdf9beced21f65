"""Exact-rational certificates for lower bounds on Seshadri constants at very general points."""

__version__ = "0.1.0"
