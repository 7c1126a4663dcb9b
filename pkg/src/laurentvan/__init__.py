"""Exact certification of vanishing hypotheses for local systems on tori."""
__version__ = "0.1.0"
