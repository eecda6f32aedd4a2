"""
Direct summation of Kapteyn series and Kepler's equation
"""
