"""Geometry over F1: monoid spectra, point counts and zeta functions, plus the
numerical counting distribution of Spec Z reconstructed from zeta zeros."""

from .abelian import AbGroup, IntMatrix, hom_count, smith_normalize, structure_of_finite_group
from .monoid import F1Group, FinMonoid, FreeMonoid, validate
from .scheme import counting_polynomial, points_over_f1n, proj_line_points, realize
from .zeta import ZetaDivisor, zeta_from_counting, zeta_from_scheme

__version__ = "0.1.0"
