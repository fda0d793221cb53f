from .clifford import INDEX_PAIRS, GammaBasis, SpinorTransformation
from .connection import ConnectionField, ContractionPair, GaugeData, PolarPointData
from .dirac import (
    DiracResidual,
    ElkoState,
    PolarResiduals,
    RegularPolarField,
    SingularPolarField,
    SpinorField,
)
from .lounesto import LounestoClass, LounestoLabel
from .planewave import ChiralSplit, ExpansionResult, Path
from .polar import AlphaBranch, PolarRegular, PolarSingular
from .spinor import Bilinears, FierzReport, Spinor


__all__ = [
    "INDEX_PAIRS",
    "AlphaBranch",
    "Bilinears",
    "ChiralSplit",
    "ConnectionField",
    "ContractionPair",
    "DiracResidual",
    "ElkoState",
    "ExpansionResult",
    "FierzReport",
    "GammaBasis",
    "GaugeData",
    "LounestoClass",
    "LounestoLabel",
    "Path",
    "PolarPointData",
    "PolarRegular",
    "PolarResiduals",
    "PolarSingular",
    "RegularPolarField",
    "SingularPolarField",
    "Spinor",
    "SpinorField",
    "SpinorTransformation",
]
