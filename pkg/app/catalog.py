"""Bundled example structures under STRUCTURES_ROOT."""

import re
from pathlib import Path
from typing import List

from app import config
from app.errors import PayloadError
from app.jordan import JordanStructure, TypeSequence
from app.payloads import read_json, sequence_from_json, structure_from_json

_NAME = re.compile(r"[A-Za-z0-9_-]+")


def is_structure_name(name: str) -> bool:
    return bool(_NAME.fullmatch(name or ""))


def resolve_structure(name: str) -> Path:
    """
    Resolve a structure name to its JSON file inside STRUCTURES_ROOT.

    Args:
        name: Bare file stem such as "mixed6"

    Returns:
        Absolute resolved path within STRUCTURES_ROOT

    Raises:
        PayloadError: If the name is malformed, escapes the catalog or is unknown
    """
    if not is_structure_name(name):
        raise PayloadError(f"Invalid structure name {name!r}: use letters, digits, '_' or '-'")

    root = config.STRUCTURES_ROOT.resolve()
    candidate = config.STRUCTURES_ROOT / f"{name}.json"
    if candidate.is_symlink():
        raise PayloadError(f"Symlinks are not allowed: {name}")
    full_path = candidate.resolve()
    if not full_path.is_relative_to(root):
        raise PayloadError(f"Structure '{name}' attempts to escape the catalog")
    if not full_path.is_file():
        raise PayloadError(f"Unknown structure {name!r}. Available: {', '.join(list_structures())}")
    return full_path


def list_structures() -> List[str]:
    """Names of the bundled structures, sorted."""
    if not config.STRUCTURES_ROOT.is_dir():
        return []
    return sorted(
        p.stem for p in config.STRUCTURES_ROOT.glob("*.json")
        if not p.is_symlink() and _NAME.fullmatch(p.stem)
    )


def read_structure_text(name: str) -> str:
    """Raw JSON text of a bundled structure."""
    return resolve_structure(name).read_text(encoding="utf-8")


def load_structure(name: str) -> JordanStructure:
    """
    Load a bundled structure by name.

    Raises:
        PayloadError: If the name is invalid or the file does not validate
    """
    path = resolve_structure(name)
    return structure_from_json(read_json(path), str(path))


def load_sequence(name: str) -> TypeSequence:
    """The type sequence of a bundled structure, in its listed order."""
    path = resolve_structure(name)
    return sequence_from_json(read_json(path), str(path))
