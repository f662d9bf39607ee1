"""
motifcut: differentially private release of synthetic graphs that preserve
the triangle-motif size of every cut, plus baselines and verification tools.
"""

__all__ = ["graph", "privacy", "sdp", "mechanism", "analysis"]
__version__ = "0.1.0"
