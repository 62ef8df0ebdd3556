"""
Utils package for optocorr.

This package contains the ambient helpers:
- Configuration loading and saving
- Event logging
- The exception hierarchy
"""
