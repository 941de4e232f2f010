"""Resource definitions for the MCP server."""

from app.catalog import list_structures, read_structure_text
from app.config import ENVIRONMENT, SERVER_NAME, VERSION


def info() -> str:
    """Basic server info."""
    return (
        f"{SERVER_NAME} {VERSION} ({ENVIRONMENT}): Darboux coordinates on coadjoint orbits. "
        f"Structures: {', '.join(list_structures())}"
    )


def structure_resource(name: str) -> str:
    """
    Read-only access to bundled structures via orbitdx://structures/{name}.

    Args:
        name: Structure name (file stem under structures/)

    Returns:
        Structure JSON text

    Raises:
        PayloadError: If the name is invalid, escapes the catalog or is unknown
    """
    return read_structure_text(name.strip("/"))
