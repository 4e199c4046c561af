"""Exact computations with metric groups: discriminant forms of even
lattices, the group of minimal glue triples, cocycle invariants and pointed
modular data. The heavy lifting lives in the compiled extension."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
