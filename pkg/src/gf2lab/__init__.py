"""Exact desk-scale tools for dense binary matroids viewed as point sets in GF(2)^n."""

from gf2lab.critical import critical_number, greedy_cover
from gf2lab.gf2core import Subspace, hyperplane_of, rref_span
from gf2lab.pointset import PointSet, density, generate, load, save, section, translate
from gf2lab.regularity import find_regular_subspace, is_regular
from gf2lab.spectral import correlations, count_sum_tuples, count_zero_triples, uniformity

__version__ = "0.1.0"
