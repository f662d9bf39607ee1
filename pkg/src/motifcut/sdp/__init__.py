"""
Inner maximization over the SDP domain.

This subpackage hosts:
- The domain {X_ii = 1, X >= I/n}: membership, Dykstra projection, PSD roots.
- Projected-gradient ascent for M . X + lambda log det X.
- The saddle objective F(w, X) and its maximized form f(w).
"""
