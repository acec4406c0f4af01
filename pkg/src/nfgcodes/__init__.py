"""Exact normal-factor-graph duality, MacWilliams identities and trellis codes."""

from .algebra import Alphabet, CycloRational, Polynomial, PrimeField, Vec
from .convcode import (
    Spectrum,
    TerminationMode,
    TrellisSection,
    dual_section,
    free_distance_spectrum,
    normalized_tailbiting_spectrum,
    section_from_generators,
    section_from_polynomials,
    terminate,
    terminated_hwgf,
    time_reverse,
    wam_power,
)
from .errors import AlphabetMismatch, CapExceeded, NFGCodesError, ValidationError
from .lincode import LinearCode, code_from_generators, dual_code, enumerate_code, weight_distribution
from .nfg import (
    NormalFactorGraph,
    Realization,
    contract_fragment,
    dualize,
    normalize,
    partition_function,
    verify_duality,
)
from .transform import FactorTensor, fourier_matrix, poisson_check, sign_inverter, verify_identity_suite
from .wgf import WeightAdjacencyMatrix, WgfKind, macwilliams_wam, macwilliams_wgf, wam, wgf

__version__ = "0.1.0"
