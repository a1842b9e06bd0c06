
# probarg/core/__init__.py
"""Core modules for probarg: logging, configuration, errors, caching"""
