"""
Unified result report for all commands.
Every command fills one envelope {status, value, certificate, diagnostics} and
renders it either as JSON or as plain text.
"""

import dataclasses
import json
import logging
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from core.config import ExitCodes
from core.errors import InputOutputError
from core.matrix_polynomial import MatrixPolynomial
from core.polynomial import Polynomial
from core.scalars import format_scalar

logger = logging.getLogger("CoreReport")


class Status(str, Enum):
    OK = "ok"
    PASS = "pass"
    FAIL = "fail"
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    UNDECIDED = "undecided"


STATUS_EXIT = {
    Status.OK: ExitCodes.OK,
    Status.PASS: ExitCodes.OK,
    Status.OPTIMAL: ExitCodes.OK,
    Status.FEASIBLE: ExitCodes.OK,
    Status.FAIL: ExitCodes.INFEASIBLE,
    Status.INFEASIBLE: ExitCodes.INFEASIBLE,
    Status.UNBOUNDED: ExitCodes.INFEASIBLE,
    Status.UNDECIDED: ExitCodes.INFEASIBLE,
}


def to_jsonable(obj: Any) -> Any:
    """
    Convert library objects into JSON-ready structures using the scalar encoding
    of the polynomial schema ("num/den" for exact values, [re, im] for floats).

    :param obj: Any result object
    :return: Plain JSON data
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, int):
        return obj
    if isinstance(obj, (Fraction, complex)):
        return format_scalar(obj)
    if isinstance(obj, float):
        return obj if np.isfinite(obj) else str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.floating):
        return to_jsonable(float(obj))
    if isinstance(obj, np.complexfloating):
        return format_scalar(complex(obj))
    if isinstance(obj, (Polynomial, MatrixPolynomial)):
        return to_jsonable(obj.to_json())
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()] if obj.dtype != object else [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def to_text(obj: Any, indent: int = 0) -> str:
    """Readable rendering: polynomials in X-notation, matrices row by row."""
    pad = " " * indent
    if isinstance(obj, Polynomial):
        return pad + obj.format()
    if isinstance(obj, MatrixPolynomial):
        return "\n".join(pad + "[" + ", ".join(row) + "]" for row in obj.format())
    if isinstance(obj, Fraction):
        return pad + str(obj)
    if isinstance(obj, float):
        return pad + f"{obj:.10g}"
    if isinstance(obj, complex):
        return pad + f"{obj.real:.10g}{obj.imag:+.10g}j"
    if isinstance(obj, np.ndarray) and obj.ndim == 2:
        return "\n".join(pad + "[" + ", ".join(to_text(v).strip() for v in row) + "]" for row in obj)
    if isinstance(obj, np.ndarray):
        return pad + "(" + ", ".join(to_text(v).strip() for v in obj) + ")"
    if isinstance(obj, dict):
        lines = []
        for key, value in obj.items():
            rendered = to_text(value, indent + 2)
            if "\n" in rendered or len(rendered) > 100:
                lines.append(f"{pad}{key}:\n{rendered}")
            else:
                lines.append(f"{pad}{key}: {rendered.strip()}")
        return "\n".join(lines)
    if isinstance(obj, (list, tuple)):
        if all(isinstance(v, (int, Fraction, float, str)) for v in obj):
            return pad + "(" + ", ".join(to_text(v).strip() for v in obj) + ")"
        return "\n".join(to_text(v, indent) for v in obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return to_text({f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)}, indent)
    return pad + str(obj)


class CoreReportGenerator:
    """
    Collects one command result and renders it.
    """

    def __init__(self, command: str, fmt: str = "json"):
        """
        :param command: Subcommand name (recorded in diagnostics)
        :param fmt: "json" or "text"
        """
        self.command = command
        self.fmt = fmt
        self.status: Status = Status.OK
        self.value: Any = None
        self.certificate: Any = None
        self.diagnostics: Dict[str, Any] = {"command": command}

    def set_result(self, status: Status, value: Any = None, certificate: Any = None) -> None:
        self.status = Status(status)
        self.value = value
        self.certificate = certificate
        logger.debug(f"{self.command}: status {self.status.value}")

    def add_diagnostic(self, key: str, value: Any) -> None:
        self.diagnostics[key] = value

    @property
    def exit_code(self) -> int:
        return STATUS_EXIT[self.status]

    def to_dict(self) -> Dict[str, Any]:
        envelope = {
            "status": self.status.value,
            "value": to_jsonable(self.value),
            "diagnostics": to_jsonable(self.diagnostics),
        }
        if self.certificate is not None:
            envelope["certificate"] = to_jsonable(self.certificate)
        return envelope

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)
        parts = [f"status: {self.status.value}"]
        if self.value is not None:
            rendered = to_text(self.value, 2)
            parts.append(f"value:\n{rendered}" if "\n" in rendered else f"value: {rendered.strip()}")
        if self.certificate is not None:
            parts.append("certificate:\n" + to_text(self.certificate, 2))
        extra = {k: v for k, v in self.diagnostics.items() if k != "command"}
        if extra:
            parts.append("diagnostics:\n" + to_text(extra, 2))
        return "\n".join(parts)


def write_text_file(path, content: str) -> Path:
    """
    Write an output artifact, creating parent directories.

    :raises InputOutputError: On any OS-level failure
    """
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(content, encoding="utf-8")
    except OSError as e:
        raise InputOutputError(f"Cannot write {target}: {e}")
    logger.info(f"Wrote {target}")
    return target


def read_json_file(path) -> Any:
    """
    :raises InputOutputError: Missing file or invalid JSON
    """
    target = Path(path)
    try:
        with open(target, "r", encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputOutputError(f"Cannot read JSON from {target}: {e}")
