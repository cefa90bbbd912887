import logging
import math
import sys
from pathlib import Path


# --- PATH CONFIGURATION ---
class Paths:
    """
    Centralized path configuration using pathlib for robust cross-platform resolution.
    """
    # Absolute path to the repository root
    BASE_DIR = Path(__file__).resolve().parent.parent

    RESOURCES_DIR = BASE_DIR / "resources"
    FIXTURES_DIR = RESOURCES_DIR / "fixtures"

    @staticmethod
    def get_validated_path(filename: str) -> Path:
        """
        Resolves a filename relative to the BASE_DIR (or as given, if absolute) and validates its existence.

        :param filename: The name of the file or relative path string.
        :return: A resolved Path object.
        :raises FileNotFoundError: If the file does not exist locally.
        """
        target = Path(filename)
        if not target.is_absolute() and not target.exists():
            target = Paths.BASE_DIR / filename
        if not target.exists():
            logging.error(f"[Config] Required file not found at: {target}")
            raise FileNotFoundError(f"Missing required file: {filename}")
        return target

    @staticmethod
    def fixture(name: str) -> Path:
        """
        Path of a bundled JSON fixture (polynomials, signomials, problems used by the demos).

        :param name: File name inside resources/fixtures
        :return: Resolved path
        """
        return Paths.get_validated_path(str(Paths.FIXTURES_DIR / name))


# --- NUMERICAL TOLERANCES ---
class Tolerances:
    """
    Float tolerances. Exact (Fraction) pipelines never consult these.
    """
    FLOAT = 1e-9
    DEPENDENCE = 1e-10
    REAL_PART = 1e-12
    EIGEN = 1e-8
    LP_PIVOT = 1e-12
    SEARCH = 1e-6
    ORBIT_SEARCH = 1e-4
    ENTROPY = 1e-9
    SDPA_ZERO = 1e-15


class Limits:
    """
    Iteration caps and size limits.
    """
    MAX_GROUP_ORDER = math.factorial(10) // 2
    MAX_SPECHT_N = 8
    MAX_NEWTON_N = 12
    PROJECTION_ITERATIONS = 5000
    REWRITE_STEPS = 100_000
    NEWTON_ITERATIONS = 200
    DENOMINATOR_CAP = 10 ** 6
    UNBOUNDED_VALUE = -1e12
    GRID_POINTS = 41
    # Points per grid sweep; every zoom round sweeps again at the same density
    GRID_BUDGET = 41 ** 3
    ZOOM_ROUNDS = 40
    DEFAULT_BOX = 10.0
    BISECTION_STEPS = 60


class ExitCodes:
    """
    Process exit codes of the symred CLI.
    """
    OK = 0
    USAGE = 1
    INFEASIBLE = 2
    PRECONDITION = 3
    IO = 4


# --- LOGGING SYSTEM ---
class MinimalFormatter(logging.Formatter):
    """
    Minimalist colored formatter with symbols for log levels.
    Colors are dropped when the stream is not a terminal.
    """
    GREY = "\x1b[38;5;240m"
    GREEN = "\x1b[32m"
    YELLOW = "\x1b[33m"
    RED = "\x1b[31m"
    RESET = "\x1b[0m"

    def __init__(self, use_color: bool = True):
        super().__init__()
        self.use_color = use_color

    def _paint(self, color: str, text: str) -> str:
        return f"{color}{text}{self.RESET}" if self.use_color else text

    def format(self, record):
        """
        Format a log record with color and level symbol.

        :param record: LogRecord instance
        :return: Formatted string
        """
        if record.levelno == logging.DEBUG:
            prefix, msg_color = self._paint(self.GREY, "d"), self.GREY
        elif record.levelno == logging.INFO:
            prefix, msg_color = self._paint(self.GREEN, "•"), self.RESET
        elif record.levelno == logging.WARNING:
            prefix, msg_color = self._paint(self.YELLOW, "⚠"), self.YELLOW
        elif record.levelno >= logging.ERROR:
            prefix, msg_color = self._paint(self.RED, "✖"), self.RED
        else:
            prefix, msg_color = "", self.RESET

        logger_name = f"{self._paint(self.GREY, f'[{record.name}]')} " if record.name != "root" else ""
        timestamp = self._paint(self.GREY, self.formatTime(record, '%H:%M:%S'))
        return f"{timestamp} {prefix} {logger_name}{self._paint(msg_color, record.getMessage())}"


def setup_logging(verbose: bool = False, quiet: bool = False):
    """
    Configure root logger with the minimal stderr handler.
    Results go to stdout, so diagnostics never mix with JSON output.

    :param verbose: If True, set level to DEBUG
    :param quiet: If True, only warnings and errors are shown
    :return: Configured root logger
    """
    root_logger = logging.getLogger()
    if root_logger.hasHandlers():
        root_logger.handlers.clear()
    if verbose:
        root_logger.setLevel(logging.DEBUG)
    elif quiet:
        root_logger.setLevel(logging.WARNING)
    else:
        root_logger.setLevel(logging.INFO)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(MinimalFormatter(use_color=sys.stderr.isatty()))
    root_logger.addHandler(console_handler)

    return root_logger
