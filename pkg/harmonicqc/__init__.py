"""
harmonicqc - Quasiconformal extensions of harmonic univalent mappings.

This package provides coefficient-class membership tests, explicit piecewise
extensions to the whole plane, dilatation bounds, grid-based verification,
harmonic convolution of exterior maps and figure rendering for harmonic
mappings of the interior and exterior unit disk.
"""

__version__ = "0.1.0"
__license__ = "MIT"
