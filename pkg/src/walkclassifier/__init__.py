"""Classification of lattice walks in the quarter plane and octant by guessing and sieving."""

__version__ = "0.1.0"
