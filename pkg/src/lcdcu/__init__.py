"""Central-upwind finite-volume schemes for the Euler equations of gas dynamics.

Two numerical fluxes are provided: the classical central-upwind flux
(``scheme="old"``) and a variant whose numerical diffusion is applied field by
field in local characteristic variables (``scheme="new"``).
"""
from .benchmarks import CASES, BenchmarkCase, make_case
from .boundary import BoundarySpec, Dirichlet, Free, Periodic, SolidWall, SourceSpec
from .grid import AdmissibilityError, DomainError, Field, Grid1D, Grid2D, cons_to_prim, prim_to_cons
from .stepper import SchemeConfig, SolverFailure, max_stable_dt, rhs, run_to_time, ssp_rk3_step

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "BenchmarkCase",
    "BoundarySpec",
    "CASES",
    "Dirichlet",
    "DomainError",
    "Field",
    "Free",
    "Grid1D",
    "Grid2D",
    "Periodic",
    "SchemeConfig",
    "SolidWall",
    "SolverFailure",
    "SourceSpec",
    "cons_to_prim",
    "make_case",
    "max_stable_dt",
    "prim_to_cons",
    "rhs",
    "run_to_time",
    "ssp_rk3_step",
]
