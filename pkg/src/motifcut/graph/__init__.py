"""
Weighted graphs and triangle-motif quantities.

This subpackage hosts:
- The dense pair-indexed graph type and cut specifications.
- Motif adjacency, triangle cuts, derivative matrices and sensitivities.
- The line-oriented graph file format and random graph models.
"""
