"""Drawings of planar graphs with few segments or arcs."""
