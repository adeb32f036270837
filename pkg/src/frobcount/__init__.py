"""Counting Artin-Schreier towers M/L/F over F_q((t)) with Galois group G_p(d, I).

Modules, bottom up: ``gf`` (finite-field tower), ``cyclofactor`` (X^d - 1 over
F_p), ``tame`` (cyclic tame L/F), ``aschreier`` (L/wp(L) representatives),
``modstruct`` (F_p[C_d]-module structure), ``discriminant``, ``census`` (exact
counts and the brute-force oracle), ``dirichlet`` (rational Dirichlet series
and poles) and ``cli``.
"""

from .census import CountTable, oracle_census, z_pd_exact, z_split_exact
from .cyclofactor import factor_xd_minus_1
from .dirichlet import assemble_phi_L, pole_report, series_coeffs
from .gf import build_tower
from .modstruct import build_module_context
from .tame import enumerate_cyclic_cd, make_extension

__all__ = [
    "CountTable",
    "assemble_phi_L",
    "build_module_context",
    "build_tower",
    "enumerate_cyclic_cd",
    "factor_xd_minus_1",
    "make_extension",
    "oracle_census",
    "pole_report",
    "series_coeffs",
    "z_pd_exact",
    "z_split_exact",
]
