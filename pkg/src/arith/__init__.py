"""
Exact rational arithmetic, polynomials and truncated power series
"""
