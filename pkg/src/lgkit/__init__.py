"""Toolkit for hybrid Landau-Ginzburg models of Calabi-Yau complete intersections.

Exact (rational) linear algebra for bigraded Jacobian rings, Koszul and
twisted de Rham cohomology, floating-point diagnostics for the quotient
Kaehler metric on the total space, and integer-lattice fans for the
simultaneous weighted blow-up.
"""

from .model import ModelSpec, parse_model, serialize_model, smoothness_probe

__all__ = ["ModelSpec", "parse_model", "serialize_model", "smoothness_probe"]
__version__ = "0.1.0"
