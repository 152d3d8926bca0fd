"""geocrystal - affine geometric crystals, tropical R maps and ultra-discretization."""

__version__ = "0.1.0"
