"""
matmor package.

Exact computations with matroids, their morphisms and quotients, flag
matroids and Tutte-type polynomials. It includes the abstract base class
`Matroid` with one subclass per backing, morphism verification and b-vectors,
exact Lorentzian certification of homogeneous polynomials, discrete concavity
checks for set functions, and the JSON descriptors read by the CLI.
"""
from .config import settings, Config
from .errors import MatmorError
from .models import Verdict, ProbeReport, Report
from .matroid import (Matroid, BasisMatroid, GraphicMatroid, LinearMatroid, UniformMatroid, DualMatroid,
                      from_bases, from_rank_table, dual, delete, contract, truncate)
from .graphs import Graph, RotationSystem
from .morphism import MatroidMorphism, BVector, b_vector, is_morphism, is_quotient, bases_of_morphism
from .flag import FlagMatroid, validate_flag
from .polynomial import Polynomial, HomogeneousPolynomial, TrivariatePolynomial
from .tutte import multivariate_tutte, tutte_polynomial, lasvergnas_tutte, homogeneous_tutte, morphism_tutte
from .lorentzian import is_lorentzian, is_ultra_log_concave
from .setfunction import SetFunction, probe_ln, is_mnat_concave

__all__ = [
    "settings",
    "Config",
    "MatmorError",
    "Verdict",
    "ProbeReport",
    "Report",
    "Matroid",
    "BasisMatroid",
    "GraphicMatroid",
    "LinearMatroid",
    "UniformMatroid",
    "DualMatroid",
    "from_bases",
    "from_rank_table",
    "dual",
    "delete",
    "contract",
    "truncate",
    "Graph",
    "RotationSystem",
    "MatroidMorphism",
    "BVector",
    "b_vector",
    "is_morphism",
    "is_quotient",
    "bases_of_morphism",
    "FlagMatroid",
    "validate_flag",
    "Polynomial",
    "HomogeneousPolynomial",
    "TrivariatePolynomial",
    "multivariate_tutte",
    "tutte_polynomial",
    "lasvergnas_tutte",
    "homogeneous_tutte",
    "morphism_tutte",
    "is_lorentzian",
    "is_ultra_log_concave",
    "SetFunction",
    "probe_ln",
    "is_mnat_concave",
]
