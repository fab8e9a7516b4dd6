"""qrap: quadratic residue patterns in arithmetic progressions"""

__version__ = "1.0.0"
