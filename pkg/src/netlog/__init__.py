"""Net logarithmic tangent sheaves of complete intersection pairs, computed exactly."""

__version__ = "0.1.0"
