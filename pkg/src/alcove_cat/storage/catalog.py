"""
In-memory catalog of built root systems.

Building a root system and its alcove geometry is the expensive part of
every command, so the CLI and the server share one catalog keyed by LieType.
"""

import logging
import threading
from typing import Optional

from alcove_cat.affine_alcove import AlcoveGeometry, geometry
from alcove_cat.config import AlcoveCatConfig, default_config
from alcove_cat.models.lie_type import LieType
from alcove_cat.root_system import RootSystem, build

logger = logging.getLogger(__name__)


class RootSystemCatalog:
    """
    Thread-safe cache of RootSystem objects.

    ``get`` builds on first use; concurrent callers asking for the same type
    may both build it, and the first stored copy wins.

    Example:
        >>> catalog = RootSystemCatalog()
        >>> catalog.get(LieType.parse("C2")).highest_root
        (Fraction(2, 1), Fraction(0, 1))
        >>> LieType.parse("C2") in catalog
        True
    """

    def __init__(self, config: Optional[AlcoveCatConfig] = None) -> None:
        self.config = config or default_config()
        self._systems: dict[LieType, RootSystem] = {}
        self._lock = threading.Lock()
        logger.debug("Initialized empty RootSystemCatalog")

    def get(self, lie_type: LieType) -> RootSystem:
        with self._lock:
            cached = self._systems.get(lie_type)
        if cached is not None:
            return cached
        rs = build(lie_type, self.config)
        with self._lock:
            return self._systems.setdefault(lie_type, rs)

    def add(self, rs: RootSystem) -> None:
        """Store a root system, replacing any entry of the same type."""
        with self._lock:
            if rs.lie_type in self._systems:
                logger.info(f"Replacing {rs.lie_type} in catalog")
            else:
                logger.info(f"Adding {rs.lie_type} to catalog")
            self._systems[rs.lie_type] = rs

    def remove(self, lie_type: LieType) -> None:
        with self._lock:
            if self._systems.pop(lie_type, None) is None:
                logger.warning(f"Attempted to remove {lie_type}, which is not cached")
            else:
                logger.info(f"Removed {lie_type} from catalog")

    def geometry(self, lie_type: LieType) -> AlcoveGeometry:
        """Alcove geometry of the cached root system (itself cached per system)."""
        return geometry(self.get(lie_type), self.config)

    def get_all(self) -> list[RootSystem]:
        with self._lock:
            systems = list(self._systems.values())
        return sorted(systems, key=lambda rs: rs.lie_type.sort_key)

    def clear(self) -> None:
        with self._lock:
            count = len(self._systems)
            self._systems.clear()
        logger.info(f"Cleared catalog ({count} root systems removed)")

    def count(self) -> int:
        with self._lock:
            return len(self._systems)

    def __len__(self) -> int:
        return self.count()

    def __contains__(self, lie_type: object) -> bool:
        with self._lock:
            return lie_type in self._systems

    def __repr__(self) -> str:
        return f"RootSystemCatalog(systems={self.count()})"
