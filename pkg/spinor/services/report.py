import io
import logging
from dataclasses import dataclass, field
from pathlib import Path as FilePath
from typing import Any, Callable, Optional

import numpy as np
from django.core.exceptions import ValidationError
from rest_framework.exceptions import ParseError
from rest_framework.exceptions import ValidationError as SerializerValidationError
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from services import HashService
from spinor import __version__
from spinor.domain import Path, Spinor, SpinorField
from spinor.serializers import (
    COMMANDS,
    ConnectionSerializer,
    GaugeSerializer,
    JobDocumentSerializer,
    PathSerializer,
    ReportSerializer,
    complex_pairs,
    real_list,
)
from spinor.services.bilinears import BilinearService
from spinor.services.clifford import CliffordService
from spinor.services.connection import ConnectionService
from spinor.services.dirac import DiracService
from spinor.services.lounesto import LounestoService
from spinor.services.planewave import PlaneWaveService
from spinor.services.polar import PolarService


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tolerances:
    classification: float = 1e-9
    residual: float = 1e-10
    derivative: float = 1e-6
    fd_step: float = 1e-4

    @classmethod
    def from_mapping(cls, values: dict[str, Any], **overrides: Optional[float]) -> "Tolerances":
        """Build from a SPINOR-style settings dict; non-None overrides win."""
        merged = {
            "classification": values.get("TOL_CLASS", cls.classification),
            "residual": values.get("TOL_RESIDUAL", cls.residual),
            "derivative": values.get("TOL_DERIVATIVE", cls.derivative),
            "fd_step": values.get("FD_STEP", cls.fd_step),
        }
        merged.update({k: v for k, v in overrides.items() if v is not None})
        for name, value in merged.items():
            if not np.isfinite(value) or value <= 0:
                msg = f"Tolerance {name} must be a positive finite number, got {value}"
                raise ValidationError(msg)
        return cls(**{k: float(v) for k, v in merged.items()})

    def as_dict(self) -> dict[str, float]:
        return {
            "classification": self.classification,
            "residual": self.residual,
            "derivative": self.derivative,
            "fd_step": self.fd_step,
        }


@dataclass(frozen=True)
class JobSpec:
    command: str
    input_path: FilePath
    tolerances: Tolerances = field(default_factory=Tolerances)
    output_path: Optional[FilePath] = None


@dataclass
class Report:
    command: str
    conventions: dict[str, Any]
    tolerances: dict[str, float]
    results: Any = None
    checks: list[dict[str, Any]] = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(check["passed"] for check in self.checks)

    @property
    def failures(self) -> list[dict[str, Any]]:
        return [check for check in self.checks if not check["passed"]]

    def check(self, name: str, observed: float, limit: float) -> None:
        """Record observed <= limit."""
        self.checks.append({"name": name, "observed": float(observed), "limit": float(limit), "passed": bool(observed <= limit)})

    def expect(self, name: str, observed: Any, expected: Any) -> None:
        self.checks.append({"name": name, "observed": observed, "limit": expected, "passed": observed == expected})


class ReportService:
    """Runs one CLI job: parse, validate, compute and shape a deterministic report."""

    COMMANDS = COMMANDS

    @staticmethod
    def load(path: FilePath) -> Any:
        try:
            with open(path, "rb") as stream:
                return JSONParser().parse(stream)
        except OSError as e:
            msg = f"Cannot read input file {path}: {e}"
            raise ValidationError(msg) from e
        except ParseError as e:
            msg = f"Input file {path} is not valid JSON: {e.detail}"
            raise ValidationError(msg) from e

    @staticmethod
    def validate(command: str, document: Any) -> dict[str, Any]:
        serializer = JobDocumentSerializer(data=document, context={"command": command})
        try:
            serializer.is_valid(raise_exception=True)
        except SerializerValidationError as e:
            msg = f"Invalid job document: {e.detail}"
            raise ValidationError(msg) from e
        return dict(serializer.validated_data)

    @classmethod
    def run(cls, job: JobSpec) -> Report:
        if job.command not in COMMANDS:
            msg = f"Unknown command {job.command!r}; expected one of {', '.join(COMMANDS)}"
            raise ValidationError(msg)
        document = cls.validate(job.command, cls.load(job.input_path))
        return cls.execute(job.command, document, job.tolerances)

    @classmethod
    def execute(cls, command: str, document: dict[str, Any], tolerances: Tolerances) -> Report:
        handlers: dict[str, Callable[[Report, dict[str, Any], Tolerances], Any]] = {
            "classify": cls._classify,
            "bilinears": cls._bilinears,
            "fierz": cls._fierz,
            "polar": cls._polar,
            "dirac-check": cls._dirac_check,
            "flagpole-matrix": cls._flagpole_matrix,
            "expand": cls._expand,
        }
        report = Report(command=command, conventions=CliffordService.conventions(), tolerances=tolerances.as_dict())
        logger.info("Running %s", command)
        report.results = handlers[command](report, document, tolerances)
        for failure in report.failures:
            logger.warning("Check %s failed: %s (limit %s)", failure["name"], failure["observed"], failure["limit"])
        logger.info("Finished %s: %d checks, passed=%s", command, len(report.checks), report.passed)
        return report

    @staticmethod
    def _classify(report: Report, doc: dict[str, Any], tol: Tolerances) -> list[dict[str, Any]]:
        results = []
        expected = doc.get("expect", {}).get("label")
        for index, spinor in enumerate(JobDocumentSerializer.spinor_list(doc)):
            klass = LounestoService.classify(spinor, tol.classification)
            results.append(
                {
                    "spinor": complex_pairs(spinor.components),
                    "label": klass.label.value,
                    "lounesto_class": klass.label.number,
                    "magnitudes": klass.magnitudes,
                }
            )
            if expected is not None:
                report.expect(f"spinor[{index}].label", klass.label.value, expected)
        return results

    @staticmethod
    def _bilinears(report: Report, doc: dict[str, Any], tol: Tolerances) -> list[dict[str, Any]]:
        return [
            {"spinor": complex_pairs(s.components), **BilinearService.compute_bilinears(s).as_dict()}
            for s in JobDocumentSerializer.spinor_list(doc)
        ]

    @staticmethod
    def _fierz(report: Report, doc: dict[str, Any], tol: Tolerances) -> list[dict[str, Any]]:
        results = []
        for index, spinor in enumerate(JobDocumentSerializer.spinor_list(doc)):
            fierz = BilinearService.fierz_check(BilinearService.compute_bilinears(spinor))
            for name, value in fierz.residuals.items():
                report.check(f"spinor[{index}].fierz.{name}", value, tol.residual)
            results.append({"spinor": complex_pairs(spinor.components), "residuals": fierz.residuals})
        return results

    @staticmethod
    def _polar(report: Report, doc: dict[str, Any], tol: Tolerances) -> list[dict[str, Any]]:
        results = []
        for index, spinor in enumerate(JobDocumentSerializer.spinor_list(doc)):
            klass = LounestoService.classify(spinor, tol.classification)
            entry: dict[str, Any] = {"spinor": complex_pairs(spinor.components), "label": klass.label.value}
            if klass.is_regular:
                p = PolarService.decompose_regular(spinor, tol.classification)
                rebuilt = PolarService.reconstruct_regular(p)
                error = np.max(np.abs(rebuilt.components - spinor.components)) / spinor.norm
                entry.update(
                    {
                        "phi": p.phi,
                        "beta": p.beta,
                        "rapidity": real_list(p.rapidity),
                        "rotation": real_list(p.rotation),
                        "phase": p.phase,
                        "u": real_list(p.u),
                        "s": real_list(p.s),
                        "L_matrix": complex_pairs(p.L_matrix),
                    }
                )
            else:
                p = PolarService.decompose_singular(spinor, tol.classification)
                original = BilinearService.compute_bilinears(spinor)
                rebuilt_b = BilinearService.compute_bilinears(PolarService.reconstruct_singular(p))
                error = max(
                    float(np.max(np.abs(np.asarray(original.as_dict()[key]) - np.asarray(rebuilt_b.as_dict()[key]))))
                    for key in ("Theta", "Phi", "S", "U", "M")
                ) / original.U[0]
                entry.update(
                    {
                        "sin_alpha": p.sin_alpha,
                        "alpha": p.alpha,
                        "alpha_branch": p.alpha_branch.value,
                        "handedness": p.handedness,
                        "phase": p.phase,
                        "L_matrix": complex_pairs(p.L_matrix),
                    }
                )
            entry["roundtrip_error"] = float(error)
            report.check(f"spinor[{index}].roundtrip", float(error), tol.residual)
            results.append(entry)
        return results

    @staticmethod
    def _spinor_field(doc: dict[str, Any]) -> SpinorField:
        wave = doc["spinor_field"]
        if wave["kind"] == "plane-wave":
            return SpinorField.plane_wave(wave["spinor"], wave["momentum"])
        if wave["kind"] == "expansion":
            conn = ConnectionSerializer.build(doc["connection"])
            return PlaneWaveService.as_field(wave["spinor"], conn, wave.get("origin", np.zeros(4)), wave["steps"])
        constant = wave["spinor"].components
        return SpinorField(
            value=lambda _x: constant,
            gradient=lambda _x: np.zeros((4, 4), dtype=complex),
            description="constant",
        )

    @classmethod
    def _dirac_check(cls, report: Report, doc: dict[str, Any], tol: Tolerances) -> list[dict[str, Any]]:
        field_ = cls._spinor_field(doc)
        gauge = GaugeSerializer.build(doc["gauge"]) if "gauge" in doc else None
        results = []
        for index, point in enumerate(doc["points"]):
            residual = DiracService.dirac_residual(
                field_, point, doc["mass"], q=doc.get("charge"), gauge=gauge, h=tol.fd_step
            )
            report.check(f"point[{index}].dirac_residual", residual.relative, tol.residual)
            results.append(
                {
                    "point": real_list(point),
                    "residual": complex_pairs(residual.residual.components),
                    "norm": residual.norm,
                    "relative": residual.relative,
                }
            )
        return results

    @staticmethod
    def _flagpole_matrix(report: Report, doc: dict[str, Any], tol: Tolerances) -> dict[str, Any]:
        if "R_mu" in doc:
            r_mu = doc["R_mu"]
            b_mu = doc.get("B_mu", np.zeros(4))
        else:
            point = doc["points"][0] if "points" in doc else np.zeros(4)
            pair = ConnectionService.contract_R(ConnectionSerializer.build(doc["connection"]).tensor(point))
            r_mu, b_mu = pair.R_mu, pair.B_mu
        mass = doc["mass"]
        matrix = DiracService.flagpole_dirac_matrix(r_mu, b_mu, mass)
        result: dict[str, Any] = {
            "R_mu": real_list(r_mu),
            "B_mu": real_list(b_mu),
            "matrix": complex_pairs(matrix),
            "normalized": complex_pairs(matrix / (-2.0 * mass)) if mass != 0 else None,
            "annihilation": [],
        }
        for index, spinor in enumerate(JobDocumentSerializer.spinor_list(doc)):
            scale = max(spinor.norm, 1.0)
            direct = float(np.linalg.norm(matrix @ spinor.components)) / scale
            conjugate = float(np.linalg.norm(matrix @ DiracService.apply_C(spinor).components)) / scale
            report.check(f"spinor[{index}].annihilated", direct, tol.residual)
            result["annihilation"].append({"spinor": complex_pairs(spinor.components), "residual": direct, "conjugate_residual": conjugate})
        return result

    @staticmethod
    def _expand(report: Report, doc: dict[str, Any], tol: Tolerances) -> dict[str, Any]:
        path: Path = PathSerializer.build(doc["path"])
        conn = ConnectionSerializer.build(doc["connection"])
        seed: Spinor = doc["spinor"]
        expansion = PlaneWaveService.expand(seed, path, conn)
        split = PlaneWaveService.chiral_split(expansion.spinor)
        result: dict[str, Any] = {
            "spinor": complex_pairs(expansion.spinor.components),
            "step_count": expansion.step_count,
            "ordering": expansion.ordering,
            "chiral_split": {"left": complex_pairs(split.left), "right": complex_pairs(split.right)},
            "derivative_residual": None,
        }
        if np.linalg.norm(path.displacement) > 0:
            residual = PlaneWaveService.verify_expansion(seed, path, conn, tol.fd_step)
            result["derivative_residual"] = residual
            report.check("expansion.derivative", residual, tol.derivative)
        expected = doc.get("expect", {}).get("spinor")
        if expected is not None:
            gap = float(np.max(np.abs(expansion.spinor.components - expected.components)))
            report.check("expansion.expected_spinor", gap, tol.residual)
        return result

    @staticmethod
    def to_data(report: Report, with_digest: bool = True) -> dict[str, Any]:
        data = dict(
            ReportSerializer(
                {
                    "command": report.command,
                    "version": report.version,
                    "conventions": report.conventions,
                    "tolerances": report.tolerances,
                    "results": report.results,
                    "checks": report.checks,
                    "passed": report.passed,
                }
            ).data
        )
        if with_digest:
            data["digest"] = HashService.compute(ReportService.render_data(data))
        return data

    @staticmethod
    def render_data(data: dict[str, Any]) -> bytes:
        return JSONRenderer().render(data, renderer_context={"indent": 2})

    @classmethod
    def render(cls, report: Report) -> bytes:
        return cls.render_data(cls.to_data(report))

    @classmethod
    def verify_digest(cls, rendered: bytes) -> bool:
        data = JSONParser().parse(io.BytesIO(rendered))
        digest = data.pop("digest", "")
        return HashService.compare_raw_to_hash(digest, cls.render_data(data))
