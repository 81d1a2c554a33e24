"""Exact genus-zero quantum K-theory of the quintic threefold.

Reconstructs the small J^K-function from the K-theoretic I-function, computes
Gromov-Witten and Gopakumar-Vafa invariants from the cohomological side, and
checks that J^K is the GV-linear expression in a(d, r, q) and b(d, r, q),
coefficient by coefficient in the Novikov variable.
"""
from .exactnum import CycloNum, cyclotomic_poly, divisors, euler_phi, mobius
from .gwside import (
    GromovWittenSolver,
    GwTable,
    compute_gw_table,
    gv_from_gw,
    gv_power,
    gw_invariants,
    i_function_h,
    reconstruct_jh,
)
from .kring import KElem, adams_k, dual_basis, k_inv, k_mul, k_pairing
from .novikov import NovSeries, adams_novikov, series_exp
from .qkside import QKReconstructor, ReconState, i_function_k, jk_small, reconstruct_jk
from .qrat import QRat, cyclotomic_support, kqrat, local_expand, project_polarization
from .verify import (
    CoeffRecord,
    CoefficientExtractor,
    ConjectureVerifier,
    VerifyReport,
    check_coefficient_theorems,
    check_identity,
    check_structure,
    conjecture_rhs,
    extract_coefficients,
    run_verification,
)
from ._validation import ReconstructionError

__version__ = "0.1.0"

__all__ = [
    "CoeffRecord", "CoefficientExtractor", "ConjectureVerifier", "CycloNum",
    "GromovWittenSolver", "GwTable", "KElem", "NovSeries", "QKReconstructor", "QRat",
    "ReconState", "ReconstructionError", "VerifyReport",
    "adams_k", "adams_novikov", "check_coefficient_theorems", "check_identity",
    "check_structure", "compute_gw_table", "conjecture_rhs", "cyclotomic_poly",
    "cyclotomic_support", "divisors", "dual_basis", "euler_phi", "extract_coefficients",
    "gv_from_gw", "gv_power", "gw_invariants", "i_function_h", "i_function_k", "jk_small",
    "k_inv", "k_mul", "k_pairing", "kqrat", "local_expand", "mobius", "project_polarization",
    "reconstruct_jh", "reconstruct_jk", "run_verification", "series_exp",
]
