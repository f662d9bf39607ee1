"""
Ground-truth oracles and verification.

This subpackage hosts:
- Exhaustive and sampled triangle-motif cut error between two graphs.
- Independent oracles for the capped-simplex update and the inner SDP.
- KKT and finite-difference gradient checks.
- The invariant suite run by motifcut-verify.
"""
