"""Optimal spin-flip protocols for a biased two-level system."""

from ._core import (
    Protocol,
    PulseSchedule,
    costs_of_gamma,
    ellip_e,
    ellip_e_inc,
    ellip_f,
    ellip_k,
    find_ratio_max,
    jacobi_sn,
    optimal_sg_energy,
    parse_schedule,
    ratio_limits,
    sg_cost,
    shortcut_cost,
    simulate,
    square_cost,
    sweep,
    synthesize,
)

__all__ = [
    "Protocol",
    "PulseSchedule",
    "costs_of_gamma",
    "ellip_e",
    "ellip_e_inc",
    "ellip_f",
    "ellip_k",
    "find_ratio_max",
    "jacobi_sn",
    "optimal_sg_energy",
    "parse_schedule",
    "ratio_limits",
    "sg_cost",
    "shortcut_cost",
    "simulate",
    "square_cost",
    "sweep",
    "synthesize",
]
