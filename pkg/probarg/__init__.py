# probarg/__init__.py
"""Epistemic probability functions over abstract argumentation frameworks"""

__version__ = "1.0.0"
