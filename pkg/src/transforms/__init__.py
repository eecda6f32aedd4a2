"""
Taylor <-> Kapteyn coefficient transforms
"""
