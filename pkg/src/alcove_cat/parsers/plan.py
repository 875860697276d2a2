"""
YAML verification plans.

A plan file names the Lie type and the checks, plus optional sampling
parameters; missing parameters fall back to the configuration defaults.
"""

import logging
from pathlib import Path
from typing import Any, Optional

import yaml
from pydantic import ValidationError

from alcove_cat.config import AlcoveCatConfig, default_config
from alcove_cat.errors import AlcoveCatError, PlanParseError
from alcove_cat.models.lie_type import LieType
from alcove_cat.models.verify import VerifyPlan, checks_for

logger = logging.getLogger(__name__)

_PLAN_KEYS = {
    "lie_type",
    "family",
    "rank",
    "checks",
    "seed",
    "samples",
    "word_length_bound",
    "grid_denominator",
    "boundary_rate",
}


class VerifyPlanParser:
    """
    Parser for verification plans written in YAML.

    Expected format:
        lie_type: C2            # or: family: C / rank: 2
        checks: all             # or a list: [lemma33, prop34d]
        seed: 7
        samples: 500
        word_length_bound: 8
        grid_denominator: 12

    Example:
        >>> plan = VerifyPlanParser().parse_text("lie_type: A1\\nchecks: [lemma33]")
        >>> plan.lie_type.name, plan.checks
        ('A1', ['lemma33'])
    """

    def __init__(self, config: Optional[AlcoveCatConfig] = None) -> None:
        self.config = config or default_config()

    def parse(self, path: Path) -> VerifyPlan:
        """
        Read and validate a plan file.

        Raises:
            PlanParseError: If the file cannot be read or is not a valid plan
        """
        path = Path(path)
        try:
            content = path.read_text(encoding="utf-8")
        except OSError as e:
            logger.error(f"Failed to read plan file:\n  File: {path}\n  Error: {e}")
            raise PlanParseError(f"Cannot read plan file {path}: {e}") from e
        return self.parse_text(content, source=str(path))

    def parse_text(self, content: str, source: str = "<string>") -> VerifyPlan:
        """
        Validate plan text.

        Raises:
            PlanParseError: On malformed YAML, unknown keys or invalid values
        """
        data = self._load_yaml(content, source)
        unknown = sorted(set(data) - _PLAN_KEYS)
        if unknown:
            raise PlanParseError(f"{source}: unknown plan keys {unknown}")

        lie_type = self._parse_lie_type(data, source)
        checks = data.get("checks", "all")
        if checks == "all":
            checks = checks_for(lie_type)
        elif isinstance(checks, str):
            checks = [c.strip() for c in checks.split(",") if c.strip()]

        try:
            plan = VerifyPlan(
                lie_type=lie_type,
                checks=checks,
                seed=data.get("seed", self.config.seed),
                samples=data.get("samples", self.config.samples),
                word_length_bound=data.get(
                    "word_length_bound", self.config.word_length_bound
                ),
                grid_denominator=data.get("grid_denominator", self.config.grid_denominator),
                boundary_rate=data.get("boundary_rate", self.config.boundary_rate),
            )
        except ValidationError as e:
            logger.error(f"Invalid verification plan:\n  Source: {source}\n  Error: {e}")
            raise PlanParseError(f"{source}: invalid plan: {e}") from e

        logger.debug(f"Parsed plan for {plan.lie_type} from {source}: {plan.checks}")
        return plan

    def validate(self, content: str) -> bool:
        """Whether the text is a YAML mapping (not a full plan validation)."""
        try:
            return isinstance(yaml.safe_load(content), dict)
        except yaml.YAMLError:
            return False

    def _load_yaml(self, content: str, source: str) -> dict[str, Any]:
        try:
            data = yaml.safe_load(content)
        except yaml.YAMLError as e:
            raise PlanParseError(f"{source}: invalid YAML: {e}") from e
        if not isinstance(data, dict):
            raise PlanParseError(
                f"{source}: plan must be a mapping, got {type(data).__name__}"
            )
        return data

    def _parse_lie_type(self, data: dict[str, Any], source: str) -> LieType:
        try:
            if "lie_type" in data:
                return LieType.parse(str(data["lie_type"]))
            if "family" in data and "rank" in data:
                return LieType.of(str(data["family"]), int(data["rank"]))
        except (AlcoveCatError, ValidationError, ValueError) as e:
            raise PlanParseError(f"{source}: invalid Lie type: {e}") from e
        raise PlanParseError(f"{source}: plan needs 'lie_type' or 'family' and 'rank'")


def load_plan(path: Path, config: Optional[AlcoveCatConfig] = None) -> VerifyPlan:
    return VerifyPlanParser(config).parse(path)
