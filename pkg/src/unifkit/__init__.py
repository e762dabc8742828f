"""Finite models of uniform structure and their invariants.

The pieces fit together in layers: `relations` and `topology` provide
the bitmask substrate, `quniform` the entourage and covering axioms,
`tower` the graded covering systems over punctured disks, `gtop` the
dense-pair sites and their sheaf cohomology, and `dmod` the operator
index computations.  `formats` and `cli` expose everything as text.
"""

__version__ = "0.1.0"
