"""Parsers for verification plan files."""

from alcove_cat.parsers.plan import VerifyPlanParser, load_plan

__all__ = ["VerifyPlanParser", "load_plan"]
