#!/usr/bin/env python
"""
Optocorr - Main Entry Point

Command-line front end for the quantum correlations of a double-cavity
optomechanical system driven by two-mode squeezed light. Settings are read
from config.json (or the file given with --config).

Usage:
    python coherence.py measures --coop 34 --squeeze 1.5 --nth 5 --damping-ratio 0.05
    python coherence.py sweep --preset fig2b --out fig2b.csv
    python coherence.py verify --report verify.json
"""

import sys

from systems.command_system import CommandSystem


def main(argv=None):
    """
    Main entry point; returns the process exit code.
    """
    return CommandSystem().run(argv)


if __name__ == "__main__":
    sys.exit(main())
