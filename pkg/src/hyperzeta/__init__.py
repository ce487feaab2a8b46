"""Moments of quadratic Dirichlet L-functions over function fields: exact sums and predictions."""

__version__ = "0.1.0"
