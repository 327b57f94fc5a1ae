import configparser
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import ValidationError, field_validator
from pydantic_settings import BaseSettings

from .exceptions import ConfigError
from .models.experiment import SEED_LIMIT, ExperimentConfig, SolverConfig

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    # Solver defaults
    seed: int = 0
    tolerance: float = 1e-6
    max_iters: int = 500
    restarts: int = 64

    # Logging
    log_level: str = "WARNING"

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v):
        if not 0 <= v < SEED_LIMIT:
            raise ValueError(
                f"SEQNORM_SEED must be an unsigned 64-bit integer, got {v}"
            )
        return v

    @field_validator("tolerance")
    @classmethod
    def validate_tolerance(cls, v):
        if not 0 < v < 1:
            raise ValueError(f"SEQNORM_TOLERANCE must lie in (0, 1), got {v}")
        return v

    @field_validator("max_iters", "restarts")
    @classmethod
    def validate_counts(cls, v):
        if v < 1:
            raise ValueError(f"Iteration and restart counts must be positive, got {v}")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(
                f"SEQNORM_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {v!r}"
            )
        return level

    def solver(self, **overrides: Any) -> SolverConfig:
        """SolverConfig from these settings with optional overrides."""
        base = SolverConfig.from_settings(self)
        return base.model_copy(update={k: v for k, v in overrides.items() if v is not None})

    def configure_logging(self) -> None:
        logging.basicConfig(
            level=getattr(logging, self.log_level),
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )

    class Config:
        env_file = ".env"
        env_prefix = "SEQNORM_"


settings = Settings()


def _split(value: str) -> list:
    return [item.strip() for item in value.replace(";", "\n").splitlines() if item.strip()]


def load_experiment_file(
    path: Path,
    section: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
    base: Optional[Settings] = None,
) -> ExperimentConfig:
    """Read one `[section]` of a key = value experiment file.

    Values given in `overrides` (command-line flags) win over the file.
    Raises ConfigError for unreadable files, unknown sections or invalid values.
    """
    base = base or settings
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"Cannot read experiment file {path}: {exc}") from exc

    sections = parser.sections()
    if not sections:
        raise ConfigError(f"Experiment file {path} has no sections")
    name = section or sections[0]
    if name not in parser:
        raise ConfigError(f"Experiment file {path} has no section [{name}]")
    entries = dict(parser[name])

    values: Dict[str, Any] = {"kind": entries.pop("kind", name)}
    try:
        if "spaces" in entries:
            values["spaces"] = _split(entries.pop("spaces"))
        if "dims" in entries:
            values["dims"] = [int(d) for d in entries.pop("dims").replace(",", " ").split()]
        if "k" in entries:
            raw = entries.pop("k").strip()
            values["k_policy"] = (
                raw if raw == "all" else [float(f) for f in raw.replace(",", " ").split()]
            )
        solver = {
            "tolerance": float(entries.pop("tolerance", base.tolerance)),
            "max_iterations": int(entries.pop("max_iters", base.max_iters)),
            "restarts": int(entries.pop("restarts", base.restarts)),
            "seed": int(entries.pop("seed", base.seed)),
        }
        out = entries.pop("out", None)
    except ValueError as exc:
        raise ConfigError(f"Invalid value in [{name}] of {path}: {exc}") from exc
    if entries:
        raise ConfigError(f"Unknown keys in [{name}] of {path}: {', '.join(sorted(entries))}")

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key in solver:
            solver[key] = value
        else:
            values[key] = value
    values["solver"] = solver
    values["seed"] = solver["seed"]
    if out is not None and "output" not in values:
        values["output"] = Path(out)

    try:
        return ExperimentConfig(**values)
    except ValidationError as exc:
        raise ConfigError(f"Invalid experiment [{name}] in {path}: {exc}") from exc
