"""Spectra of finite graphs with a one-sided infinite path attached."""
from .families import FamilyReport, FamilySpec, family_charpoly, flower_spectrum, star_spectrum, star_uniform_poly
from .graph import (
    Graph,
    build_cycle,
    build_flower,
    build_multistar,
    build_path,
    couple,
    delete_vertices,
    simple_cycles_through,
)
from .numerics import RootInterval, SymMatrix, refine_root, solve_monotone, sturm_isolate, sym_eigenvalues
from .oracle import (
    TruncationReport,
    convergence_study,
    embedded_multiplicity_probe,
    resolvent_check,
    schur_identity_check,
    truncate,
)
from .poly import IntPoly, charpoly, chebyshev_q, schwenk_expand, tail_equation_poly
from .tail import SpectrumReport, discrete_spectrum, full_spectrum_report, green_free, schur_complement_matrix

__version__ = "0.1.0"
