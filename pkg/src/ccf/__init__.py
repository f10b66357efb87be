"""Exact and certified complex continued fractions over imaginary quadratic rings."""

from .algorithms import AlgorithmSpec, DigitUnresolved, ForcedStream, PartitionSpec, nearest_integer, partition_algorithm
from .cf_core import ExpansionReport, expand
from .growth import growth_check, succession_check
from .interval import ComplexBox, Interval, RationalBox
from .lagrange import NoPeriodFound, detect_period, surd_from_period
from .reals import ExactReal
from .rings import EISENSTEIN, GAUSSIAN, RINGS, FieldElement, RingElement, RingSpec, get_ring
from .exact_surd import ReducibleError, SurdContext, SurdElement
from .verify import check_growth_polynomial, verify_cor52, verify_thm51

__version__ = "0.1.0"

__all__ = [
    "AlgorithmSpec", "ComplexBox", "DigitUnresolved", "EISENSTEIN", "ExactReal", "ExpansionReport",
    "FieldElement", "ForcedStream", "GAUSSIAN", "Interval", "NoPeriodFound", "PartitionSpec",
    "RINGS", "RationalBox", "ReducibleError", "RingElement", "RingSpec", "SurdContext", "SurdElement",
    "check_growth_polynomial", "detect_period", "expand", "get_ring", "growth_check", "nearest_integer",
    "partition_algorithm", "succession_check", "surd_from_period", "verify_cor52", "verify_thm51",
]
