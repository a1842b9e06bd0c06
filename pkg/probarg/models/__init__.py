
# probarg/models/__init__.py
"""Pydantic models for probarg"""
