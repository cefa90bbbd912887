"""
CLI group specifications: "S:n", "C:n", "D:n", "D:n:plane", "trivial:n", or a JSON file
describing an explicit matrix group.
"""

import logging
from pathlib import Path

from core.config import Paths
from core.core_report import read_json_file
from core.errors import InputOutputError, PreconditionError
from core.matrices import matrix_from_json
from core.scalars import parse_scalar
from modules.groups.families import CyclicGroup, DihedralGroup, ExplicitGroup, SymmetricGroup
from modules.groups.group_representation import GroupRepresentation
from modules.groups.groups_config import GROUP_FAMILIES, TRIVIAL_SPEC

logger = logging.getLogger("Groups")


def parse_group_spec(spec: str) -> GroupRepresentation:
    """
    Build a group from its command-line specification.

    :param spec: "S:3", "C:4", "D:3", "D:3:plane", "trivial:2" or a path to a JSON file
    :return: GroupRepresentation
    :raises PreconditionError: On a malformed family spec
    :raises InputOutputError: If the JSON file cannot be read
    """
    parts = spec.strip().split(":")
    family = parts[0]
    if family in GROUP_FAMILIES or family == TRIVIAL_SPEC:
        if len(parts) < 2 or not parts[1].isdigit():
            raise PreconditionError(f"Group spec {spec!r} needs a size, e.g. {family}:3")
        n = int(parts[1])
        if family == TRIVIAL_SPEC:
            return ExplicitGroup.trivial(n)
        if family == "S":
            return SymmetricGroup(n)
        if family == "C":
            return CyclicGroup(n)
        realization = parts[2] if len(parts) > 2 else "vertices"
        return DihedralGroup(n, realization)
    return load_explicit_group(spec)


def load_explicit_group(path: str) -> ExplicitGroup:
    """
    Read an explicit group:
    {"generators": [matrix, ...], "degree"?: n, "name"?: str,
     "irreps"?: [{"generators": [matrix, ...], "dim"?: d}, ...],
     "characters"?: [[scalar, ...], ...], "elements"?: [matrix, ...]}

    :param path: JSON file path
    :return: ExplicitGroup
    """
    try:
        target = Paths.get_validated_path(path)
    except FileNotFoundError as e:
        raise InputOutputError(f"Unknown group spec or missing group file: {path} ({e})")
    data = read_json_file(target)
    if not isinstance(data, dict) or "generators" not in data:
        raise PreconditionError(f"{path}: an explicit group needs a 'generators' list")
    generators = [matrix_from_json(m) for m in data["generators"]]
    irreps = irrep_dims = None
    if "irreps" in data:
        irreps = [[matrix_from_json(m) for m in item["generators"]] for item in data["irreps"]]
        if any("dim" in item for item in data["irreps"]):
            irrep_dims = [int(item.get("dim", len(item["generators"][0]))) for item in data["irreps"]]
    characters = data.get("characters") or data.get("character_table")
    if characters is not None:
        characters = [[parse_scalar(v) for v in row] for row in characters]
    elements = [matrix_from_json(m) for m in data["elements"]] if "elements" in data else None
    group = ExplicitGroup(generators, degree=data.get("degree"), irreps=irreps, irrep_dims=irrep_dims,
                          characters=characters, name=data.get("name", Path(path).stem), elements=elements)
    logger.info(f"Loaded explicit group {group.name} of order {group.order} on {group.degree} dimensions")
    return group
