"""
Correlation measures package for optocorr.

Quantum coherence, entanglement of formation and Gaussian quantum discord
of symmetric two-mode Gaussian states, and their evaluation on the
mechanical and optical pairs of the double-cavity system.
"""
