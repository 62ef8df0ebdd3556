"""
Optomechanical model package for optocorr.

This package maps physical parameters of the double-cavity system to its
steady state:
- Dimensionless and raw laboratory parameters
- Closed-form covariance blocks of the mechanical and optical pairs
- The full four-mode covariance matrix
"""
