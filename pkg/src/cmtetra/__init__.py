"""Exact algebra of Cayley-Menger determinants, tetrahedroids and rational tetrahedra."""
__version__ = "0.1.0"
