import logging
from pathlib import Path
from typing import Any, Optional

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError, CommandParser
from rest_framework.exceptions import ValidationError as SerializerValidationError

from spinor.exceptions import InconsistencyError
from spinor.services import JobSpec, ReportService, Tolerances


logger = logging.getLogger(__name__)

EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3


class Command(BaseCommand):
    help = "Run one spinor job on a JSON input document and print a deterministic JSON report."

    requires_system_checks: list[str] = []

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("job", metavar="command", choices=ReportService.COMMANDS, help="Job to run")
        parser.add_argument("--input", required=True, help="Path of the JSON input document")
        parser.add_argument(
            "--output",
            help="Report file; bare names are placed in SPINOR['REPORT_DIR'] when it is set (default: stdout)",
        )
        parser.add_argument("--tol-class", type=float, dest="tol_class", help="Classification tolerance")
        parser.add_argument("--tol-residual", type=float, dest="tol_residual", help="Residual tolerance")
        parser.add_argument("--tol-derivative", type=float, dest="tol_derivative", help="Derivative check tolerance")
        parser.add_argument("--fd-step", type=float, dest="fd_step", help="Finite-difference step")

    @staticmethod
    def resolve_output(output: Optional[str]) -> Optional[Path]:
        if not output:
            return None
        path = Path(output)
        report_dir = settings.SPINOR.get("REPORT_DIR")
        if report_dir and path.parent == Path("."):
            return Path(report_dir) / path
        return path

    def handle(self, *args: Any, **options: Any) -> None:
        try:
            tolerances = Tolerances.from_mapping(
                settings.SPINOR,
                classification=options.get("tol_class"),
                residual=options.get("tol_residual"),
                derivative=options.get("tol_derivative"),
                fd_step=options.get("fd_step"),
            )
            job = JobSpec(
                command=options["job"],
                input_path=Path(options["input"]),
                tolerances=tolerances,
                output_path=self.resolve_output(options.get("output")),
            )
            report = ReportService.run(job)
            rendered = ReportService.render(report)
            if job.output_path is None:
                self.stdout.write(rendered.decode("utf-8"))
            else:
                job.output_path.parent.mkdir(parents=True, exist_ok=True)
                job.output_path.write_bytes(rendered + b"\n")
                logger.info("Report written to %s", job.output_path)
        except (ValidationError, SerializerValidationError, OSError, OverflowError) as e:
            msg = f"Input error: {e}"
            raise CommandError(msg, returncode=EXIT_INPUT_ERROR) from e
        except InconsistencyError as e:
            msg = f"Internal consistency error: {e}"
            raise CommandError(msg, returncode=EXIT_INTERNAL_ERROR) from e

        if not report.passed:
            names = ", ".join(f"{c['name']} (observed {c['observed']}, limit {c['limit']})" for c in report.failures)
            msg = f"Tolerance check failed: {names}"
            raise CommandError(msg, returncode=EXIT_CHECK_FAILED)
