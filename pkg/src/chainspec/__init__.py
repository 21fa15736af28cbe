"""Exact computations with symmetric spectra of integer chain complexes.

Implements symmetric sequences, Day convolution in shuffle normal form,
the sign spectrum Z[*], the functors D (colimit over injections) and R,
the natural maps between them, and a verification harness that checks
their defining identities at desk scale with exact integer arithmetic.
"""

__version__ = "0.1.0"
