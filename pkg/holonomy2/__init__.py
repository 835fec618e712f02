"""
holonomy2: crossed modules of Lie algebras, Maurer-Cartan pairs of two-term
L-infinity valued forms, loop-space transport with surface holonomy, and the
(higher) Hochschild chains in which the holonomy cycle lives
"""

__version__ = "0.1.0"
