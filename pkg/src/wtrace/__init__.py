"""Exact realization of W_{1+inf}/(C-1, w_{0,0}) and Tr(H) on bosonic Fock space."""

__version__ = "0.1.0"
