"""
Gaussian core package for optocorr.

This package contains the symplectic algebra for Gaussian states in the
vacuum-variance-1/2 convention:
- Covariance matrix types (symmetric two-mode and general)
- The entropy function f
- Closed-form and numeric symplectic spectra, partial transposition
- Physicality checks and mode reordering
"""

# Modules are imported directly by callers, nothing is re-exported here
