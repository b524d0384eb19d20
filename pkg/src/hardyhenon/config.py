"""Plain-text config ingestion: one `key = value` per line, `#` comments.

Values may be decimal literals or p/q rationals; both are kept exact
(a decimal literal is a rational).  Scientific notation falls back to
float and loses the exact path.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .exponents import ProblemParams, SpacePair

_DECIMAL = re.compile(r"^[+-]?\d+(\.\d+)?$")
_RATIONAL = re.compile(r"^[+-]?\d+\s*/\s*\d+$")

Value = Union[int, float, Fraction, list]


class ConfigError(ValueError):
    pass


def parse_scalar(text: str) -> Union[int, float, Fraction]:
    text = text.strip()
    if _RATIONAL.match(text):
        num, den = text.split("/")
        if int(den) == 0:
            raise ConfigError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    if _DECIMAL.match(text):
        if "." not in text:
            return int(text)
        return Fraction(text)  # exact decimal
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"cannot parse value {text!r}") from None


def parse_value(text: str) -> Value:
    text = text.strip()
    if "," in text:
        return [parse_scalar(part) for part in text.split(",") if part.strip()]
    return parse_scalar(text)


def parse_config(path) -> Dict[str, Value]:
    cfg: Dict[str, Value] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            if not key:
                raise ConfigError(f"{path}:{lineno}: empty key")
            cfg[key] = parse_value(val)
    return cfg


def problem_from_config(cfg: Dict[str, Value]) -> ProblemParams:
    missing = [k for k in ("d", "a") if k not in cfg]
    if missing:
        raise ConfigError(f"config missing keys: {missing}")
    d = cfg["d"]
    if isinstance(d, Fraction) and d.denominator == 1:
        d = int(d)
    if not isinstance(d, int):
        raise ConfigError(f"d must be an integer, got {d!r}")
    mu = cfg.get("mu", 0)
    if isinstance(mu, Fraction) and mu.denominator == 1:
        mu = int(mu)
    return ProblemParams(
        d=d,
        a=cfg["a"],
        gamma=cfg.get("gamma", 0),
        alpha=cfg.get("alpha", 2),
        mu=mu,
    )


def space_from_config(cfg: Dict[str, Value]) -> Optional[SpacePair]:
    if "q" in cfg and "s" in cfg:
        return SpacePair(cfg["q"], cfg["s"])
    return None


def quadruple_keys(cfg: Dict[str, Value]) -> Optional[Tuple[SpacePair, SpacePair]]:
    keys = ("q1", "s1", "q2", "s2")
    if all(k in cfg for k in keys):
        return SpacePair(cfg["q1"], cfg["s1"]), SpacePair(cfg["q2"], cfg["s2"])
    return None
