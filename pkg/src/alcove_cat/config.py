"""
Configuration management for alcove-cat.

Settings are read from environment variables with the ``ALCOVE_CAT_`` prefix
(or a local ``.env`` file) using Pydantic Settings.
"""

import logging
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from alcove_cat.errors import RankLimitError

logger = logging.getLogger(__name__)

VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class AlcoveCatConfig(BaseSettings):
    """
    Tunable limits and defaults for enumeration and verification.

    Every option can be set through an environment variable, for example::

        export ALCOVE_CAT_BFS_LIMIT=200000
        export ALCOVE_CAT_LOG_LEVEL=DEBUG

    **Configuration Options:**

    log_level:
        Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL). Default: WARNING

    bfs_limit:
        Cap on the size of any breadth-first group closure. Default: 1_000_000

    max_reduce_steps:
        Cap on wall reflections applied while folding a point into the
        fundamental alcove. Default: 100_000

    max_rank:
        Largest rank the ``alcove`` and ``verify`` commands accept without
        ``--force``. Default: 8

    alcove_bfs_threshold:
        The ``alcove`` command enumerates a vertex stabilizer only when its
        predicted order is at most this; above it the Weyl-order product is
        reported. Default: 50_000

    seed, samples, word_length_bound, grid_denominator, boundary_rate:
        Defaults of a verification plan.

    float_tolerance, polar_tolerance, polar_max_iterations:
        Float-mode trigonometry and polar-decomposition settings.

    Example:
        >>> config = AlcoveCatConfig(bfs_limit=5000)
        >>> config.bfs_limit
        5000
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )

    log_level: str = Field(
        default="WARNING",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
        validation_alias="ALCOVE_CAT_LOG_LEVEL",
    )

    bfs_limit: int = Field(
        default=1_000_000,
        ge=1,
        description="Maximum number of elements in a breadth-first group closure",
        validation_alias="ALCOVE_CAT_BFS_LIMIT",
    )

    max_reduce_steps: int = Field(
        default=100_000,
        ge=1,
        description="Maximum reflections applied by reduce_to_alcove",
        validation_alias="ALCOVE_CAT_MAX_REDUCE_STEPS",
    )

    max_rank: int = Field(
        default=8,
        ge=1,
        description="Largest rank accepted by alcove/verify without --force",
        validation_alias="ALCOVE_CAT_MAX_RANK",
    )

    alcove_bfs_threshold: int = Field(
        default=50_000,
        ge=1,
        description="Largest predicted stabilizer order enumerated by the alcove command",
        validation_alias="ALCOVE_CAT_ALCOVE_BFS_THRESHOLD",
    )

    seed: int = Field(
        default=7,
        description="Default seed of verification campaigns",
        validation_alias="ALCOVE_CAT_SEED",
    )

    samples: int = Field(
        default=500,
        gt=0,
        description="Default number of random samples per check",
        validation_alias="ALCOVE_CAT_SAMPLES",
    )

    word_length_bound: int = Field(
        default=8,
        ge=1,
        description="Default word-length bound for affine Weyl enumeration",
        validation_alias="ALCOVE_CAT_WORD_LENGTH_BOUND",
    )

    grid_denominator: int = Field(
        default=12,
        ge=1,
        description="Default denominator of sampled and gridded rational points",
        validation_alias="ALCOVE_CAT_GRID_DENOMINATOR",
    )

    boundary_rate: float = Field(
        default=0.25,
        ge=0.0,
        le=1.0,
        description="Share of sampled points placed on an alcove face",
        validation_alias="ALCOVE_CAT_BOUNDARY_RATE",
    )

    float_tolerance: float = Field(
        default=1e-12,
        gt=0.0,
        description="Tolerance of float-mode Clifford and rotation comparisons",
        validation_alias="ALCOVE_CAT_FLOAT_TOLERANCE",
    )

    polar_tolerance: float = Field(
        default=1e-10,
        gt=0.0,
        description="Target residual of the polar-decomposition Newton iteration",
        validation_alias="ALCOVE_CAT_POLAR_TOLERANCE",
    )

    polar_max_iterations: int = Field(
        default=100,
        ge=1,
        description="Iteration cap of the polar-decomposition Newton iteration",
        validation_alias="ALCOVE_CAT_POLAR_MAX_ITERATIONS",
    )

    def configure_logging(self) -> None:
        """
        Configure logging based on the log_level setting.

        Log records go to stderr so that stdout stays clean for JSON output.

        Example:
            >>> AlcoveCatConfig(log_level="DEBUG").configure_logging()
        """
        numeric_level = getattr(logging, self.log_level.upper(), None)
        if not isinstance(numeric_level, int):
            logger.warning(f"Invalid log level: {self.log_level}, defaulting to WARNING")
            numeric_level = logging.WARNING

        logging.basicConfig(
            level=numeric_level,
            format="[%(levelname)s] %(name)s: %(message)s",
            force=True,
        )

        logger.info(f"Logging configured with level: {self.log_level}")

    def validate_config(self) -> tuple[bool, list[str]]:
        """
        Validate cross-field constraints that field validators cannot see.

        Returns:
            Tuple of (is_valid, list_of_errors)
        """
        errors = []

        if self.log_level.upper() not in VALID_LOG_LEVELS:
            errors.append(
                f"Invalid log level: {self.log_level}\n"
                f"  Valid levels: {', '.join(VALID_LOG_LEVELS)}"
            )

        if self.alcove_bfs_threshold > self.bfs_limit:
            errors.append(
                f"alcove_bfs_threshold ({self.alcove_bfs_threshold}) exceeds "
                f"bfs_limit ({self.bfs_limit})"
            )

        if self.max_rank > 8:
            logger.warning(
                f"max_rank={self.max_rank}: stabilizer enumeration above rank 8 "
                "may not finish"
            )

        return len(errors) == 0, errors

    def guard_rank(self, rank: int, force: bool = False) -> None:
        """
        Refuse ranks above max_rank unless forced.

        Raises:
            RankLimitError: If rank > max_rank and force is not set
        """
        if rank > self.max_rank and not force:
            raise RankLimitError(
                f"rank {rank} exceeds max_rank={self.max_rank}; force (--force) to run anyway"
            )

    def display_config(self) -> str:
        """Human-readable display of the current configuration."""
        return f"""
alcove-cat Configuration
========================
Log Level:             {self.log_level}
BFS Limit:             {self.bfs_limit}
Max Reduce Steps:      {self.max_reduce_steps}
Max Rank:              {self.max_rank}
Alcove BFS Threshold:  {self.alcove_bfs_threshold}

Verification defaults:
  seed={self.seed} samples={self.samples} word_length_bound={self.word_length_bound}
  grid_denominator={self.grid_denominator} boundary_rate={self.boundary_rate}

Float mode:
  float_tolerance={self.float_tolerance} polar_tolerance={self.polar_tolerance}
  polar_max_iterations={self.polar_max_iterations}
""".strip()

    def __repr__(self) -> str:
        """String representation."""
        return (
            f"AlcoveCatConfig(log_level={self.log_level}, "
            f"bfs_limit={self.bfs_limit}, max_rank={self.max_rank})"
        )


@lru_cache(maxsize=1)
def default_config() -> AlcoveCatConfig:
    """Process-wide configuration read once from the environment."""
    return AlcoveCatConfig()
