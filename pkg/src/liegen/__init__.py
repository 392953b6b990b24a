"""liegen: group-theoretic construction and verification of special functions.

The package realizes the Heisenberg group, the Euclidean group of the plane,
and the rotation group both as 3x3 matrices and as differential operators,
derives the Hermite polynomials and Bessel functions from the ladder-operator
algebra, and verifies the resulting identity catalog exactly where rational
arithmetic allows and numerically (with stated tolerances) elsewhere.
"""

__version__ = "0.1.0"
