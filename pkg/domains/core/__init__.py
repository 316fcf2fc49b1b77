"""
Core Domain - shared errors, logging setup and HTTP error mapping
"""

from .errors import LabError

__all__ = ['LabError']
