from .bilinears import BilinearService
from .clifford import CliffordService
from .connection import ConnectionService
from .dirac import DiracService
from .lounesto import LounestoService
from .planewave import PlaneWaveService
from .polar import PolarService
from .report import Report, ReportService, Tolerances, JobSpec


__all__ = [
    "BilinearService",
    "CliffordService",
    "ConnectionService",
    "DiracService",
    "LounestoService",
    "PlaneWaveService",
    "PolarService",
    "Report",
    "ReportService",
    "Tolerances",
    "JobSpec",
]
