"""MCP server entrypoint for orbitdx."""

from fastmcp import FastMCP

from app.config import SERVER_NAME
from app.resources import info, structure_resource
from app.tools import (
    ping,
    orbit_info,
    project_structure,
    parameterize_matrix,
    extract_coordinates,
    verify_darboux,
    jordan_verify,
    random_point,
    roundtrip,
)


def create_mcp() -> FastMCP:
    """Create and configure the FastMCP server instance."""
    mcp = FastMCP(name=SERVER_NAME)

    # Register tools
    mcp.tool(ping)
    mcp.tool(orbit_info)
    mcp.tool(project_structure)
    mcp.tool(parameterize_matrix)
    mcp.tool(extract_coordinates)
    mcp.tool(verify_darboux)
    mcp.tool(jordan_verify)
    mcp.tool(random_point)
    mcp.tool(roundtrip)

    # Register resources
    mcp.resource("orbitdx://info")(info)
    mcp.resource("orbitdx://structures/{name}")(structure_resource)

    return mcp


def main() -> None:
    """Run the MCP server over stdio."""
    mcp = create_mcp()
    mcp.run()


if __name__ == "__main__":
    main()
