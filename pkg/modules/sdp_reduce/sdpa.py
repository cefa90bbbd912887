"""
Sparse SDPA (".dat-s") export and parsing.

Layout after the comment lines: number of constraints, number of blocks, block sizes
(negative for a diagonal block), the right-hand side vector, then one
"matno blkno i j value" entry per line with i ≤ j. Matrix 0 is the objective, negated
for minimization since SDPA maximizes over the dual side. All 1×1 blocks are merged
into one trailing diagonal block.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from core.core_report import write_text_file
from core.errors import PreconditionError, SdpaFormatError
from core.matrices import zeros
from core.scalars import Scalar, is_exact, to_scalar
from modules.sdp_reduce.reduction import ReducedSDP
from modules.sdp_reduce.sdp_problem import SDPProblem
from modules.sdp_reduce.sdp_reduce_config import SDPA_COMMENT_CHARS, SDPA_SENSE_TAG, SDPA_ZERO, SENSES

logger = logging.getLogger("SdpReduce")

Entry = Tuple[int, int, int, int, Scalar]

_SEPARATORS = re.compile(r"[\s,{}()]+")


def _format_value(v: Scalar) -> str:
    v = to_scalar(v)
    if isinstance(v, complex):
        if abs(v.imag) > SDPA_ZERO:
            raise PreconditionError(f"SDPA data must be real, got {v}")
        v = v.real
    if is_exact(v) and v.denominator == 1:
        return str(v.numerator)
    if v == 0:
        return "0"
    return repr(float(v))


def _parse_value(token: str, line_no: int) -> Scalar:
    try:
        if re.fullmatch(r"[+-]?\d+", token):
            return Fraction(int(token))
        return float(token)
    except ValueError:
        raise SdpaFormatError(f"Line {line_no}: {token!r} is not a number")


@dataclass
class SdpaData:
    """
    The numbers of an SDPA file; `entries` keeps (matno, blkno, i, j, value), 1-based.
    """
    sense: str
    block_sizes: List[int]
    rhs: List[Scalar]
    entries: List[Entry] = field(default_factory=list)
    name: str = "sdp"

    @property
    def num_constraints(self) -> int:
        return len(self.rhs)

    @classmethod
    def from_blocks(cls, sense: str, objective: List[np.ndarray], constraints: List[Tuple[List[np.ndarray], Scalar]],
                     name: str) -> "SdpaData":
        sizes = [b.shape[0] for b in objective]
        full = [k for k, s in enumerate(sizes) if s > 1]
        diagonal = [k for k, s in enumerate(sizes) if s == 1]
        block_sizes = [sizes[k] for k in full] + ([-len(diagonal)] if diagonal else [])
        sign = 1 if sense == "max" else -1

        def matrix_entries(matno: int, blocks: List[np.ndarray], scale: int) -> List[Entry]:
            out = []
            for blkno, k in enumerate(full, start=1):
                m = blocks[k]
                for i in range(m.shape[0]):
                    for j in range(i, m.shape[0]):
                        v = to_scalar(m[i, j])
                        if abs(v) > SDPA_ZERO:
                            out.append((matno, blkno, i + 1, j + 1, scale * v))
            for pos, k in enumerate(diagonal, start=1):
                v = to_scalar(blocks[k][0, 0])
                if abs(v) > SDPA_ZERO:
                    out.append((matno, len(full) + 1, pos, pos, scale * v))
            return out

        entries = matrix_entries(0, objective, sign)
        for matno, (blocks, _) in enumerate(constraints, start=1):
            entries.extend(matrix_entries(matno, blocks, 1))
        return cls(sense, block_sizes, [to_scalar(b) for _, b in constraints], entries, name)

    @classmethod
    def from_problem(cls, sdp: SDPProblem) -> "SdpaData":
        """A single block of size n (a 1×1 problem becomes the diagonal block -1)."""
        return cls.from_blocks(sdp.sense, [sdp.objective], [([a], b) for a, b in sdp.constraints], sdp.name)

    @classmethod
    def from_reduced(cls, reduced: ReducedSDP) -> "SdpaData":
        return cls.from_blocks(reduced.sense, reduced.objective_blocks, reduced.constraints,
                                f"{reduced.source.name}-reduced")

    def render(self) -> str:
        lines = [f"{SDPA_SENSE_TAG}{self.sense} name={self.name}",
                 str(self.num_constraints),
                 str(len(self.block_sizes)),
                 " ".join(str(s) for s in self.block_sizes),
                 " ".join(_format_value(b) for b in self.rhs)]
        lines.extend(f"{matno} {blkno} {i} {j} {_format_value(v)}" for matno, blkno, i, j, v in self.entries)
        return "\n".join(lines) + "\n"

    def to_sdp_problem(self) -> SDPProblem:
        """
        Reassemble the block-diagonal matrices into one SDPProblem (no group attached).
        """
        offsets, total = [], 0
        for s in self.block_sizes:
            offsets.append(total)
            total += abs(s)
        matrices = [zeros(total, total) for _ in range(self.num_constraints + 1)]
        for matno, blkno, i, j, v in self.entries:
            base = offsets[blkno - 1]
            m = matrices[matno]
            m[base + i - 1, base + j - 1] = v
            m[base + j - 1, base + i - 1] = v
        sign = 1 if self.sense == "max" else -1
        objective = matrices[0] * sign
        return SDPProblem(objective, list(zip(matrices[1:], self.rhs)), self.sense, None, self.name)

    def to_json(self) -> dict:
        return {"sense": self.sense, "block_sizes": self.block_sizes, "num_constraints": self.num_constraints,
                "entries": len(self.entries), "name": self.name}


def parse_sdpa(text: str) -> SdpaData:
    """
    Read sparse SDPA text. Braces, parentheses and commas in the header count as separators.
    Without a sense comment the problem is read as a maximization.

    :raises SdpaFormatError: On a truncated header, malformed entries or out-of-range indices
    """
    sense, name = "max", "sdp"
    body: List[Tuple[int, List[str]]] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith(SDPA_SENSE_TAG):
            fields = stripped[len(SDPA_SENSE_TAG):].split()
            sense = fields[0] if fields else sense
            for extra in fields[1:]:
                if extra.startswith("name="):
                    name = extra[len("name="):]
            continue
        if stripped[0] in SDPA_COMMENT_CHARS:
            continue
        body.append((line_no, [t for t in _SEPARATORS.split(stripped) if t]))
    if sense not in SENSES:
        raise SdpaFormatError(f"Unknown sense {sense!r} in the SDPA comment")
    if len(body) < 3:
        raise SdpaFormatError(f"SDPA header needs at least 3 lines, found {len(body)}")

    def header_int(k: int) -> int:
        line_no, tokens = body[k]
        try:
            return int(tokens[0])
        except (IndexError, ValueError):
            raise SdpaFormatError(f"Line {line_no}: expected an integer")

    m, nblocks = header_int(0), header_int(1)
    line_no, tokens = body[2]
    try:
        block_sizes = [int(t) for t in tokens[:nblocks]]
    except ValueError:
        raise SdpaFormatError(f"Line {line_no}: block sizes must be integers")
    if len(block_sizes) != nblocks or any(s == 0 for s in block_sizes):
        raise SdpaFormatError(f"Line {line_no}: expected {nblocks} nonzero block sizes")

    cursor, rhs = 3, []
    if m:
        if len(body) <= cursor:
            raise SdpaFormatError("SDPA file ends before the right-hand side vector")
        line_no, tokens = body[cursor]
        rhs = [_parse_value(t, line_no) for t in tokens[:m]]
        if len(rhs) != m:
            raise SdpaFormatError(f"Line {line_no}: expected {m} right-hand side values")
        cursor += 1
    else:
        # an empty b vector line is optional
        if len(body) > cursor and len(body[cursor][1]) != 5:
            cursor += 1

    entries = []
    for line_no, tokens in body[cursor:]:
        if len(tokens) != 5:
            raise SdpaFormatError(f"Line {line_no}: an entry needs 5 fields, got {len(tokens)}")
        try:
            matno, blkno, i, j = (int(t) for t in tokens[:4])
        except ValueError:
            raise SdpaFormatError(f"Line {line_no}: matrix, block and position indices must be integers")
        if not 0 <= matno <= m or not 1 <= blkno <= nblocks:
            raise SdpaFormatError(f"Line {line_no}: matrix {matno} / block {blkno} out of range")
        size = abs(block_sizes[blkno - 1])
        if not (1 <= i <= size and 1 <= j <= size) or (block_sizes[blkno - 1] < 0 and i != j):
            raise SdpaFormatError(f"Line {line_no}: position ({i}, {j}) outside block {blkno}")
        if i > j:
            i, j = j, i
        entries.append((matno, blkno, i, j, _parse_value(tokens[4], line_no)))
    logger.debug(f"Parsed SDPA: {m} constraints, blocks {block_sizes}, {len(entries)} entries")
    return SdpaData(sense, block_sizes, rhs, entries, name)


def export_sdpa(problem: Union[SDPProblem, ReducedSDP, SdpaData], path: Optional[str] = None) -> SdpaData:
    """
    Write a full or reduced problem as sparse SDPA.

    :param problem: SDPProblem, ReducedSDP or already-built SdpaData
    :param path: Target file; nothing is written when omitted
    :return: The SdpaData that was rendered
    :raises InputOutputError: When the file cannot be written
    """
    if isinstance(problem, SdpaData):
        data = problem
    elif isinstance(problem, ReducedSDP):
        data = SdpaData.from_reduced(problem)
    else:
        data = SdpaData.from_problem(problem)
    if path:
        write_text_file(path, data.render())
        logger.info(f"SDPA export: {data.num_constraints} constraints, blocks {data.block_sizes} -> {path}")
    return data
