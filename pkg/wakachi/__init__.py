"""
wakachi: segmentación de palabras en japonés con CRF de cadena lineal
"""

__version__ = "0.1.0"
