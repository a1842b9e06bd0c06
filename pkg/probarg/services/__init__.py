
# probarg/services/__init__.py
"""Service modules implementing semantics, properties and solvers"""
