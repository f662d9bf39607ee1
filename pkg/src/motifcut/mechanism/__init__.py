"""
Private release of triangle-motif cut preserving graphs.

This subpackage hosts:
- Preprocessing: the released total weight, per-pair caps and sensitivity proxy.
- The capped-simplex mirror-descent update and the stochastic gradient.
- The end-to-end mechanism, its report format and replay.
- The randomized-response baseline.
"""
