"""
Systems package for optocorr.

This package contains the command-line systems:
- Parameter sweeps and CSV output
- The verification suite
- Subcommand parsing and dispatch
"""
