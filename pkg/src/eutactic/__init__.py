"""Eutactic-star quantum codes: shadow frames, coherent secret sharing and
beam-splitter circuits, in exact Q(sqrt 2) or floating-point arithmetic."""

__version__ = "0.1.0"
