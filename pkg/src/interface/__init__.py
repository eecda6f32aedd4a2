"""
Command-line interface for the Kapteyn toolkit
"""
