"""Exact computations with local systems on finite 2-complexes."""
