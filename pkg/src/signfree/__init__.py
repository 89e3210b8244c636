"""Exact, sign-test-free real algebra: virtual roots, sup-inf normal forms,
branch-on-sign proofs for lattice-ordered groups, collapse certificates and
lazy power series ordered by an infinitesimal."""

from .algebraic import RealAlgebraic, algebraic_compare, algebraic_eval, algebraic_sign, isolate_real_roots
from .certificates import (
    Accepted,
    CollapseCertificate,
    MalformedCertificate,
    Rejected,
    RingPresentation,
    check_collapse_certificate,
)
from .csqrt import complex_sqrt_cover
from .linear import Constraint, Entailed, Refuted, linear_entailment, verify_certificate
from .mpoly import MPoly
from .poly import DomainError, UniPoly, cauchy_bound, normalized_derivative, parse_poly, sturm_count
from .prover import (
    Atom,
    Counterexample,
    Rule,
    UnsupportedFragmentError,
    Valid,
    lattice_group_corpus,
    parse_rule,
    prove_lgroup_rule,
)
from .semipoly import DiffersAt, Equal, SupInfNF, to_sup_inf_nf, tri_sort, univar_semipoly_compare
from .series import (
    LaurentElement,
    LazySeries,
    NotAUnitError,
    format_series,
    hensel_newton_root,
    series_abs,
    series_frac,
    series_inf,
    series_inverse,
    series_otf_split,
    series_sign_potential,
    series_sup,
)
from .terms import ParseError, eval_term, format_term, parse_term
from .vroots import (
    ExtendedBound,
    NegInf,
    PosInf,
    VirtualRootTriangle,
    budan_fourier_index,
    f_star,
    interval_extrema,
    interval_min_abs,
    ivt_witness,
    rescale_roots,
    sign_table,
    virtual_roots,
)

__version__ = "0.1.0"
