"""Shared caches of computed root data."""

from alcove_cat.storage.catalog import RootSystemCatalog

__all__ = ["RootSystemCatalog"]
