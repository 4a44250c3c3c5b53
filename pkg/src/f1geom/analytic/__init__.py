"""Numerics for the counting distribution of Spec Z: zeta, its zeros and the explicit formula."""

from .constants import constants
from .evaluators import digamma, hardy_z, theta, zeta_em
from .zeros import ZeroTable, find_zeros, load_zeros, save_zeros
