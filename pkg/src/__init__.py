"""
Kapteyn series toolkit: Taylor/Kapteyn transforms, closed forms and evaluation
"""
