"""Operator norms and contractivity on matrix-ball domains Omega_A"""

__version__ = '1.0.0'
