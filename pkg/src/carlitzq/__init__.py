"""Carlitz-type q-Euler numbers, fermionic p-adic integrals and l_{p,q}(s, chi)."""

from .carlitz import classical_euler, euler_q, euler_q_closed, euler_q_recurrence
from .characters import DirichletCharacter, make_character, parse_character
from .dirichlet import distribution_rhs, gen_euler_closed, gen_euler_integral
from .errors import (
    BackendMismatch,
    BadConductorMultiple,
    CarlitzError,
    DomainError,
    PrecisionExhausted,
    PrecisionNotReached,
)
from .kernels import backend_name
from .lfunc import LEvalRequest, l_integral, l_neg_int, l_series
from .padic_core import PadicNumber
from .qcalc import QParam, q_int, q_pow

__version__ = "0.1.0"

__all__ = [
    "BackendMismatch",
    "BadConductorMultiple",
    "CarlitzError",
    "DirichletCharacter",
    "DomainError",
    "LEvalRequest",
    "PadicNumber",
    "PrecisionExhausted",
    "PrecisionNotReached",
    "QParam",
    "backend_name",
    "classical_euler",
    "distribution_rhs",
    "euler_q",
    "euler_q_closed",
    "euler_q_recurrence",
    "gen_euler_closed",
    "gen_euler_integral",
    "l_integral",
    "l_neg_int",
    "l_series",
    "make_character",
    "parse_character",
    "q_int",
    "q_pow",
]
