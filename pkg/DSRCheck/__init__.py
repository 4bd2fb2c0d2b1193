"""
A checker and interpreter for a core functional language with extensible datasort refinements
"""
__version__ = "0.1.0"
