"""
Core orchestrator base class for command modules.
Provides subcommand registration, dispatch and the shared input loaders.
"""

import logging
from abc import ABC, abstractmethod
from typing import Dict

from core.config import Paths, Tolerances
from core.core_report import CoreReportGenerator, read_json_file
from core.errors import InputOutputError, PreconditionError
from core.matrices import matrix_from_json
from core.polynomial import Polynomial

logger = logging.getLogger(__name__)


class CoreOrchestrator(ABC):
    """
    Abstract base class for module front ends.
    Subclasses map subcommand names to handler methods in COMMANDS and add their
    flags in register().
    """

    COMMANDS: Dict[str, str] = {}

    def __init__(self, tol: float = Tolerances.FLOAT):
        """
        :param tol: Float tolerance for this invocation (--tol)
        """
        self.tol = tol

    @classmethod
    @abstractmethod
    def register(cls, subparsers) -> None:
        """
        Add this module's subcommands to an argparse subparsers object.
        Must be implemented by subclasses.

        :param subparsers: Result of ArgumentParser.add_subparsers()
        """
        pass

    def execute(self, command: str, args) -> CoreReportGenerator:
        """
        Run one subcommand.

        :param command: Subcommand name
        :param args: Parsed argparse namespace
        :return: Filled report
        """
        if command not in self.COMMANDS:
            raise ValueError(f"Unknown command: {command}")
        report = CoreReportGenerator(command, getattr(args, "format", "json"))
        report.add_diagnostic("tol", self.tol)
        logger.debug(f"Dispatching {command} to {type(self).__name__}")
        getattr(self, self.COMMANDS[command])(args, report)
        return report

    # --- shared loaders ---
    @staticmethod
    def load_json(path: str):
        try:
            target = Paths.get_validated_path(path)
        except FileNotFoundError as e:
            raise InputOutputError(str(e))
        return read_json_file(target)

    @classmethod
    def load_polynomial(cls, path: str) -> Polynomial:
        data = cls.load_json(path)
        if isinstance(data, dict) and "polynomial" in data:
            data = data["polynomial"]
        return Polynomial.from_json(data)

    @classmethod
    def load_polynomials(cls, path: str, key: str):
        """List of polynomials stored under `key` (missing key gives an empty list)."""
        data = cls.load_json(path)
        if not isinstance(data, dict):
            raise PreconditionError(f"{path}: expected a JSON object with '{key}'")
        return [Polynomial.from_json(p) for p in data.get(key, [])]

    @classmethod
    def load_matrix(cls, path: str):
        data = cls.load_json(path)
        if isinstance(data, dict) and "matrix" in data:
            data = data["matrix"]
        return matrix_from_json(data)
