"""Fiber cones of good filtrations of homogeneous ideals.

The package computes with homogeneous ideals of graded quotient rings
k[x]/a over a prime field or the rationals, builds good filtrations, and
checks multiplicity formulas and Cohen-Macaulay criteria for their fiber
cones by comparing independent computations.
"""
from __future__ import annotations

from .errors import (AttemptsExhaustedError, ConsistencyViolation, FiberConeError,
                     FiltrationError, IterationCapError, NotFiniteLengthError,
                     PreconditionError, RingMismatchError, WindowExhaustedError)
from .fcseq import (FCCertificate, WeakFCSequence, fc1_check, fc2_check,
                    find_weak_fc_sequence, reduction_from_sequence, superficial_check)
from .field import CoefficientField
from .filtration import (Filtration, filtration_adic, filtration_quotient,
                         filtration_rescale, filtration_seeded, filtration_term,
                         is_nilpotent)
from .groebner import GroebnerBasis, eliminate, groebner_basis, normal_form
from .ideals import (AmbientRing, Ideal, colon, contains, finite_quotient_dim,
                     hilbert_fn, ideal_arith, intersect, length, primary_to_max,
                     saturate, saturation)
from .invariants import (FiberHilbert, NonReduction, ReductionData, analytic_spread,
                         fiber_hilbert, fiber_hilbert_value, multiplicity_limit,
                         verify_reduction)
from .oracle import oracle_graded_dim, oracle_membership
from .parsing import ParseError
from .poly import DEGREVLEX, MonomialOrder, PolyRing, Polynomial
from .report import Config, Report, run_report
from .scenario import Scenario, format_scenario, parse_scenario
from .theorems import (CMReport, MultiplicityReport, cm_direct, cm_lemma41, cm_report,
                       cm_thm42, cor43_scan, multiplicity_lemma32, multiplicity_thm33,
                       prop31_lengths)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
