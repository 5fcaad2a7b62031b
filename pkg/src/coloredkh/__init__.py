"""Khovanov, Lee and colored Jones computations, their spectral sequences, and nanophrase functors."""
__version__ = "0.1.0"
