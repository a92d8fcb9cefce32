"""
Polynomial chaos for dependent random variables

Orthogonalized polynomial bases, weighted Leja interpolation and the
Nataf/Rosenblatt alternatives for correlated and non-product densities.
"""

__version__ = "0.1.0"
