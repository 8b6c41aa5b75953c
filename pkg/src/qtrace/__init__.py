"""Exact q-series toolkit for Eisenstein/cusp-form trace functions of weight 2."""
from .qseries import (
    EtaQuotientSpec,
    NonUnitSeries,
    QSeries,
    eta_expand,
    euler_product,
    format_series,
    series,
    series_D,
    series_dilate,
    series_invert,
    series_pow,
)
from .modforms import E2N, E2N_prime, F2, He_series, LevelData, appendix_GN, eisenstein_E2, sigmaN_series
from .cyclic_trace import (
    CongruenceViolation,
    MoonshineConstants,
    TraceFunctionSet,
    F_g,
    Q1_N,
    Q_M23,
    QN_N,
    constants,
    f_g,
    trace_functions,
)
from .congruence import (
    CuspBasis,
    InsolubleCongruence,
    ModuleExistenceViolated,
    MultiplicityTable,
    Witness,
    lemma34_check,
    mazur_search,
    prop33_check,
    solve_mod,
    znz_multiplicities,
)
from .arithmetic import CurveModel, count_points, divisibility_report, residue_equivalence
from .ingest import load_basis, parse_cusp_basis, parse_curves
from .voa import (
    CycleShape,
    FrameShape,
    VOAConfig,
    U_trace,
    W_trace,
    brute_ext_trace,
    brute_sym_trace,
    clifford_trace,
    heisenberg_trace,
    heisenberg_weighted_trace,
)
from .jobs import JOB_NAMES, ReportLine, VerificationJob, run_job, run_suite

__version__ = "0.1.0"
