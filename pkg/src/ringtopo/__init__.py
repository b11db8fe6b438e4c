"""Executable ring-theoretic characterisations of compactness, Hausdorffness
and profiniteness over power set rings."""

__version__ = "0.1.0"
