"""
MCP server exposing alcove-cat computations as tools.

Tools mirror the CLI subcommands; results are JSON text. The
``lie://catalog`` resource lists the supported families and the root
systems built so far.
"""

import asyncio
import logging
from typing import Any, Optional

from mcp.server import Server
from mcp.types import Resource, TextContent, Tool

from alcove_cat.config import AlcoveCatConfig, default_config
from alcove_cat.cover_verifier import run as run_plan
from alcove_cat.models.lie_type import FAMILIES, LieType
from alcove_cat.models.verify import ALL_CHECKS, VerifyPlan, checks_for
from alcove_cat.orbit_classifier import ls_bound
from alcove_cat.reports import (
    alcove_data,
    bound_data,
    marks_data,
    orbits_data,
    realize_data,
    root_data,
)
from alcove_cat.storage.catalog import RootSystemCatalog
from alcove_cat.utils import safe_json_dumps

logger = logging.getLogger(__name__)

CATALOG_URI = "lie://catalog"

_TYPE_PROPERTIES: dict[str, Any] = {
    "family": {
        "type": "string",
        "enum": list(FAMILIES),
        "description": "Dynkin family",
    },
    "rank": {"type": "integer", "minimum": 1, "description": "Rank n"},
}

_FORCE_PROPERTY: dict[str, Any] = {
    "force": {"type": "boolean", "description": "Allow ranks above the configured max_rank"}
}
_RANK_GUARDED = frozenset({"alcove", "verify"})


def _schema(
    extra: Optional[dict[str, Any]] = None, required: tuple[str, ...] = ()
) -> dict[str, Any]:
    return {
        "type": "object",
        "properties": {**_TYPE_PROPERTIES, **(extra or {})},
        "required": ["family", "rank", *required],
    }


class AlcoveCatServer:
    """
    MCP server over a shared RootSystemCatalog.

    Example:
        >>> server = AlcoveCatServer(AlcoveCatConfig())
        >>> result = await server._call_tool("marks", {"family": "E", "rank": 8})
    """

    def __init__(self, config: Optional[AlcoveCatConfig] = None) -> None:
        self.config = config or default_config()
        self.catalog = RootSystemCatalog(self.config)
        self.mcp_server = Server("alcove-cat")
        self._setup_handlers()
        logger.info("Initialized AlcoveCatServer")

    def _setup_handlers(self) -> None:
        @self.mcp_server.list_resources()
        async def list_resources() -> list[Resource]:
            return await self._list_resources()

        @self.mcp_server.read_resource()
        async def read_resource(uri: str) -> str:
            return await self._read_resource(str(uri))

        @self.mcp_server.list_tools()
        async def list_tools() -> list[Tool]:
            return await self._list_tools()

        @self.mcp_server.call_tool()
        async def call_tool(name: str, arguments: dict[str, Any]) -> list[TextContent]:
            return await self._call_tool(name, arguments)

    async def start(self) -> None:
        """Validate the configuration before serving."""
        logger.info(self.config.display_config())
        is_valid, errors = self.config.validate_config()
        if not is_valid:
            for error in errors:
                logger.error(f"  {error}")
            raise ValueError("Invalid configuration")
        logger.info("alcove-cat MCP server started")

    async def stop(self) -> None:
        logger.info(f"Stopping alcove-cat MCP server ({self.catalog.count()} cached systems)")

    # MCP protocol handlers

    async def _list_resources(self) -> list[Resource]:
        return [
            Resource(
                uri=CATALOG_URI,
                name="Lie type catalog",
                description="Supported Dynkin families, checks, and cached root systems",
                mimeType="application/json",
            )
        ]

    async def _read_resource(self, uri: str) -> str:
        if uri == CATALOG_URI:
            return self._get_catalog()
        raise ValueError(f"Unknown resource URI: {uri}")

    def _get_catalog(self) -> str:
        catalog = {
            "families": list(FAMILIES),
            "checks": list(ALL_CHECKS),
            "cached": [
                {
                    "lie_type": rs.lie_type.name,
                    "group": rs.lie_type.group_name,
                    "num_roots": len(rs.roots),
                }
                for rs in self.catalog.get_all()
            ],
        }
        return safe_json_dumps(catalog)

    async def _list_tools(self) -> list[Tool]:
        return [
            Tool(
                name="root_data",
                description="Simple roots, highest root, Cartan matrix and form of a simple type",
                inputSchema=_schema(),
            ),
            Tool(
                name="marks",
                description="Coefficients m_k of the highest root",
                inputSchema=_schema(),
            ),
            Tool(
                name="alcove",
                description="Vertices, faces and stabilizer orders of the fundamental alcove",
                inputSchema=_schema(_FORCE_PROPERTY),
            ),
            Tool(
                name="orbits",
                description="Identification, dimension and relative category of each orbit O_k",
                inputSchema=_schema(),
            ),
            Tool(
                name="ls_bound",
                description="Upper bound for the LS category from the orbits O_k",
                inputSchema=_schema(
                    {
                        "assume_conjecture": {
                            "type": "boolean",
                            "description": "Count conjectured relative categories",
                        },
                        "overrides": {
                            "type": "object",
                            "additionalProperties": {"type": "integer", "minimum": 0},
                            "description": "Assumed values cat_G(O_k), keyed by k",
                        },
                    }
                ),
            ),
            Tool(
                name="realize",
                description="exp v_k as a quaternion matrix, Clifford element, SO matrix or phases",
                inputSchema=_schema(
                    {
                        "k": {"type": "integer", "minimum": 0},
                        "model": {
                            "type": "string",
                            "enum": ["quat", "clifford", "so", "complex"],
                        },
                    },
                    required=("k",),
                ),
            ),
            Tool(
                name="verify",
                description="Run a seeded verification campaign",
                inputSchema=_schema(
                    {
                        "checks": {
                            "type": "array",
                            "items": {"type": "string", "enum": list(ALL_CHECKS)},
                        },
                        "seed": {"type": "integer"},
                        "samples": {"type": "integer", "minimum": 1},
                        **_FORCE_PROPERTY,
                    }
                ),
            ),
        ]

    async def _call_tool(self, name: str, arguments: dict[str, Any]) -> list[TextContent]:
        lie_type = self._lie_type(arguments)
        if name in _RANK_GUARDED:
            self.config.guard_rank(lie_type.rank, bool(arguments.get("force", False)))
        if name == "root_data":
            payload: Any = root_data(self.catalog.get(lie_type))
        elif name == "marks":
            payload = marks_data(self.catalog.get(lie_type))
        elif name == "alcove":
            payload = await self._run_blocking(
                alcove_data, self.catalog.geometry(lie_type), self.config
            )
        elif name == "orbits":
            payload = orbits_data(self.catalog.get(lie_type))
        elif name == "ls_bound":
            payload = self._tool_ls_bound(lie_type, arguments)
        elif name == "realize":
            payload = realize_data(
                self.catalog.geometry(lie_type), int(arguments.get("k", 0)), arguments.get("model")
            )
        elif name == "verify":
            return await self._tool_verify(lie_type, arguments)
        else:
            raise ValueError(f"Unknown tool: {name}")
        return [TextContent(type="text", text=safe_json_dumps(payload))]

    def _lie_type(self, arguments: dict[str, Any]) -> LieType:
        family = arguments.get("family")
        rank = arguments.get("rank")
        if family is None or rank is None:
            raise ValueError("Arguments 'family' and 'rank' are required")
        return LieType.of(str(family), int(rank))

    def _tool_ls_bound(self, lie_type: LieType, arguments: dict[str, Any]) -> dict[str, Any]:
        overrides = {int(k): int(v) for k, v in (arguments.get("overrides") or {}).items()}
        report = ls_bound(
            self.catalog.get(lie_type),
            overrides=overrides,
            assume_conjecture=bool(arguments.get("assume_conjecture", False)),
        )
        return bound_data(report)

    async def _tool_verify(self, lie_type: LieType, arguments: dict[str, Any]) -> list[TextContent]:
        plan = VerifyPlan(
            lie_type=lie_type,
            checks=arguments.get("checks") or checks_for(lie_type),
            seed=arguments.get("seed", self.config.seed),
            samples=arguments.get("samples", self.config.samples),
            word_length_bound=self.config.word_length_bound,
            grid_denominator=self.config.grid_denominator,
            boundary_rate=self.config.boundary_rate,
        )
        report = await self._run_blocking(run_plan, plan, self.config)
        return [TextContent(type="text", text=report.to_json())]

    async def _run_blocking(self, func: Any, *args: Any) -> Any:
        """Run CPU-bound work in the default executor."""
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(None, func, *args)

    def __repr__(self) -> str:
        return f"AlcoveCatServer(cached={self.catalog.count()})"
