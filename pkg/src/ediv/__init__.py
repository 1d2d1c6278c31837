"""Chain-level E-infinity algebra over F2: Barratt-Eccles operad, cochain actions,
division by coalgebras, and Steenrod-module models of mapping spaces."""

__version__ = "0.1.0"
