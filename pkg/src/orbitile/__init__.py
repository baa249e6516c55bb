"""Exact arithmetic for tilings of elliptic orbifolds.

Computes generating functions for surface tilings and branched covers of
elliptic orbifolds P_{3,3,3}, P_{2,4,4}, P_{2,3,6} (and the torus /
pillowcase cases), fits them into finite-dimensional spaces of
quasimodular forms for Gamma_1(N), and extracts Masur-Veech volumes of
strata of cubic, quartic, and sextic differentials from cusp asymptotics.

All arithmetic is exact: rationals, cyclotomic numbers, and symbolic
constants in pi and theta_N.  No floating point enters any result; the
only numerics are optional validation layers.
"""

__version__ = "0.1.0"

from .cyclo import Cyclotomic, zeta
from .partitions import Partition
from .qseries import QSeries

__all__ = ["Cyclotomic", "zeta", "Partition", "QSeries", "__version__"]
