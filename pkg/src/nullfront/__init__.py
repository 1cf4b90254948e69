"""Nullcone fronts of framed curves in anti-de Sitter 3-space."""

__version__ = "0.1.0"
