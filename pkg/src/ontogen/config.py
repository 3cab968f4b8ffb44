"""Tuning knobs for candidate scoring and ranking.

Config files use schema "ontogen-config/1" with kebab-case keys mirroring
the dataclass fields. Every knob has a default, so a config file is
optional and may set any subset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import SchemaError

SCHEMA_CONFIG = "ontogen-config/1"


@dataclass(frozen=True)
class GenerationConfig:
    # pruneSemantic: constraint-match bonuses per filled slot
    exact_bonus: float = 20.0
    narrow_bonus: float = 10.0
    default_bonus: float = 4.0
    # penalty per meaning slot no sense in the set expresses
    uncovered_penalty: float = 5.0
    # scalar feature matching: full bonus at distance 0, none beyond tolerance
    feature_bonus: float = 10.0
    feature_tolerance: float = 0.25
    # reference: preferring a pronoun over a description for known referents
    pronoun_bonus: float = 2.0
    # aggregation guard: cartesian product size limit
    set_cap: int = 10000
    # final ranking: score = pw*set + fw*freq - rp*repeats - ltb*length
    pipeline_weight: float = 1.0
    frequency_weight: float = 5.0
    repetition_penalty: float = 10.0
    length_tie_break: float = 0.0


_FIELD_BY_KEY = {f.name.replace("_", "-"): f for f in fields(GenerationConfig)}


def parse_config(text: str, source: str = "<config>") -> GenerationConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}: {exc.msg}", source=source) from None
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object", source=source)
    if data.get("schema") != SCHEMA_CONFIG:
        raise SchemaError(f'expected schema "{SCHEMA_CONFIG}", got {data.get("schema")!r}',
                          source=source)
    kwargs = {}
    for key, value in data.items():
        if key == "schema":
            continue
        spec = _FIELD_BY_KEY.get(key)
        if spec is None:
            raise SchemaError(f"unknown config key {key!r}", source=source)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{key} must be a number, got {value!r}", source=source)
        kwargs[spec.name] = int(value) if spec.type == "int" else float(value)
    cfg = GenerationConfig(**kwargs)
    if cfg.set_cap < 1:
        raise SchemaError("set-cap must be at least 1", source=source)
    if cfg.feature_tolerance <= 0:
        raise SchemaError("feature-tolerance must be positive", source=source)
    return cfg


def load_config(path) -> GenerationConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read file: {exc}", source=str(path)) from None
    return parse_config(text, source=str(path))
