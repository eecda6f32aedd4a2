"""
Bessel J evaluation for the Kapteyn toolkit
"""
