"""
Noise sources and privacy calibration.

This subpackage hosts:
- Seeded Laplace and Gaussian noise streams with independent substreams.
- The formulas that turn (epsilon, delta, beta) and released quantities into
  mechanism run parameters, plus composition accounting.
"""
