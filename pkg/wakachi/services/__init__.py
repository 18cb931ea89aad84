"""
Servicios del toolkit
"""
