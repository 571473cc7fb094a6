"""Exact-arithmetic workbench for post-groups and their relatives.

The package covers free post-groups over diagonal left-regular magmas,
finite post-group tables with braided-group and skew-brace conversions,
gauge post-groups built from group actions, and the graded post-Hopf
structure on the tensor algebra over a free magma, including the K map
and a truncated Magnus calculus.  Everything computes with exact
integer and rational arithmetic.
"""

from __future__ import annotations

__version__ = "0.1.0"
