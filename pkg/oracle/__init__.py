"""
Dynamics oracle package for optocorr.

Independent recomputation of the steady state from the linearized
Langevin dynamics, used to validate the closed forms:
- Drift and diffusion matrices
- Dense Lyapunov solve
- Frequency-domain quadrature of single covariance entries
- Comparison reports
"""
