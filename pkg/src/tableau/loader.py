"""Tableau file parsing and scheme lookup by preset name or path.

A tableau file is a JSON document:

    {"name": "rk2", "s": 2, "a": [[1.0]], "b": [0.5, 0.5], "c": [0.0, 1.0]}

``a`` lists rows 1..s-1 (row i has i entries), ``c`` and ``name`` are optional.
"""

import logging
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError, model_validator

from src.errors import ConfigError, ParseError
from src.models.scheme import ButcherTableau, Scheme
from src.tableau.order import MAX_ORDER, verify_order
from src.tableau.presets import PRESETS

logger = logging.getLogger(__name__)


class TableauFile(BaseModel):
    """On-disk representation of an explicit Butcher tableau."""

    s: int = Field(gt=0)
    a: list[list[float]] = Field(default_factory=list)
    b: list[float]
    c: list[float] | None = None
    name: str | None = None

    @model_validator(mode="after")
    def _shape(self) -> "TableauFile":
        if len(self.a) != self.s - 1:
            raise ValueError(f"'a' must list rows 1..{self.s - 1}, got {len(self.a)} rows")
        if len(self.b) != self.s:
            raise ValueError(f"'b' must have {self.s} entries, got {len(self.b)}")
        if self.c is not None and len(self.c) != self.s:
            raise ValueError(f"'c' must have {self.s} entries, got {len(self.c)}")
        return self

    def to_tableau(self, default_name: str) -> ButcherTableau:
        return ButcherTableau.from_rows(self.a, self.b, self.c, name=self.name or default_name)


def nominal_order(t: ButcherTableau) -> int:
    """Highest order (1..4) whose conditions all hold; 1 when none do."""
    order = 1
    for target in range(1, MAX_ORDER + 1):
        if not verify_order(t, target):
            break
        order = target
    return order


def load_tableau(path: Path | str) -> ButcherTableau:
    """Parse a tableau file.

    Raises:
        ParseError: If the file cannot be read or does not match the format
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read tableau file {path}: {e}") from e

    try:
        document = TableauFile.model_validate_json(text)
        return document.to_tableau(default_name=path.stem)
    except ValidationError as e:
        raise ParseError(f"malformed tableau file {path}: {e}") from e


def resolve_scheme(spec: str) -> Scheme:
    """Return the scheme named by a preset name or a tableau file path.

    A readable file wins over a preset of the same name (with a warning).

    Raises:
        ParseError: If the file exists but is malformed
        ConfigError: If ``spec`` is neither a file nor a preset
    """
    path = Path(spec)
    if path.is_file():
        if spec in PRESETS:
            logger.warning(f"File '{spec}' shadows the preset of the same name")
        tableau = load_tableau(path)
        logger.info(f"Loaded tableau '{tableau.name}' (s={tableau.s}) from {path}")
        return Scheme(name=tableau.name, tableau=tableau, order=nominal_order(tableau))

    if spec in PRESETS:
        return PRESETS[spec]

    raise ConfigError(
        f"unknown scheme '{spec}': not a file and not one of {', '.join(sorted(PRESETS))}"
    )
