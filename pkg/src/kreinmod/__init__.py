"""Finite-dimensional computations with indefinite inner products.

Layers: twisted-involution operator algebras (``algebra``), indefinite
modules over plain C*-algebras (``krein_module``), modules over twisted
algebras (``krein_over_krein``), Clifford/Grassmann/spinor realizations
(``clifford``), balanced tensor products of correspondences
(``correspondence``), and a seeded randomized verification harness
(``checker``, ``cli``).
"""

from .checker import CheckConfig, run, run_demo
from .report import CheckRecord, Report

__version__ = "0.1.0"

__all__ = ["CheckConfig", "CheckRecord", "Report", "run", "run_demo"]
