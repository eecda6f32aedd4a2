"""
Closed forms of power-weighted Kapteyn sums
"""
