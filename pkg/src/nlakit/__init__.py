"""Nilpotent Lie algebras, their complex structures and pseudo-Kahler metrics.

Everything is exact: rationals and Gaussian rationals, with sympy only where a
square root of 2 or 3 cannot be avoided.
"""

from .catalog import (
    GenericExtParams,
    SnNParams,
    WnNParams,
    build_generic,
    build_snn,
    build_snn6,
    build_wnn,
    builtin,
    realify_table1,
    reduce_to_normal_form,
    resolve,
    table_row,
)
from .cpxstruct import (
    CoframePresentation,
    JType,
    RealJ,
    check_intertwiner,
    classify,
    induced_quotient,
    j_compatible_series,
    nijenhuis,
    realify,
)
from .errors import *  # noqa: F401,F403
from .exactnum import Gauss, Subspace, gauss
from .forms import KForm
from .invariants import betti_numbers, casimir_count, fingerprint, nd_invariant
from .liealg import LieAlgebra, ascending_type, descending_type, parse_algebra
from .pseudokahler import complex_symplectic_solve, curvature, levi_civita, pk_report, pk_solve

__version__ = "0.1.0"
