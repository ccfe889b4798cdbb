"""Finite biprops, multicategories and their envelopes, checked by enumeration."""

__version__ = "0.1.0"
