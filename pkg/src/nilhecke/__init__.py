"""
Exact computations in the cyclotomic nilHecke algebra ``H(ell, n)``.

The nilHecke algebra on ``psi_1..psi_{n-1}, y_1..y_n`` modulo ``y_1^ell``:
normal forms, the graded cellular basis, the center, an explicit set of matrix
units and three symmetrizing forms.  All arithmetic is over the rationals.

>>> from nilhecke import get_context
>>> get_context(3, 2).dimension
12
"""

from .cyclotomic import CycContext, CycElement, get_context

__all__ = ["CycContext", "CycElement", "get_context"]
__version__ = "0.1.0"
