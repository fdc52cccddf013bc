"""
Logging, run configuration, the error taxonomy and the report cache.
"""

__version__ = "0.1.0"
