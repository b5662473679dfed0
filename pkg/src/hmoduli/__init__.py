"""Exact computation of moduli spaces of central H-extensions of rational H-spaces."""

__version__ = "0.1.0"
