from .fields import ComplexField, FiniteFloatField, RealVectorField, SpinorComponentsField, complex_pairs, real_list
from .job import (
    COMMANDS,
    ConnectionSerializer,
    ExpectSerializer,
    GaugeSerializer,
    JobDocumentSerializer,
    PathSerializer,
    SpinorFieldSerializer,
    TensorEntrySerializer,
)
from .report import CheckSerializer, ReportSerializer


__all__ = [
    "COMMANDS",
    "CheckSerializer",
    "ComplexField",
    "ConnectionSerializer",
    "ExpectSerializer",
    "FiniteFloatField",
    "GaugeSerializer",
    "JobDocumentSerializer",
    "PathSerializer",
    "RealVectorField",
    "ReportSerializer",
    "SpinorComponentsField",
    "SpinorFieldSerializer",
    "TensorEntrySerializer",
    "complex_pairs",
    "real_list",
]
