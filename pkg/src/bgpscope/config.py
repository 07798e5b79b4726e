"""Run configuration: a flat key=value file, every key overridable by a
command-line flag (flag wins).  Defaults follow the pipeline's standard
thresholds: edges pruned below 3 table observations, major ASes at 5+
prefixes, 90% coverage target, outages at 3+ vantages, a 7-snapshot
hijack learning window, and a 95% regression band."""

from dataclasses import dataclass, field, fields
from pathlib import Path


class ConfigError(ValueError):
    """Bad configuration or usage; maps to exit code 2."""


@dataclass
class RunConfig:
    mrt: list[str] = field(default_factory=list)
    tables: list[str] = field(default_factory=list)
    delegations: str | None = None
    asrel: list[str] = field(default_factory=list)
    out_dir: str = "out"
    collector: str | None = None
    prune_min_obs: int = 3
    major_min_prefixes: int = 5
    coverage_target: float = 0.90
    outage_min_vis: int = 3
    hijack_learn_window: int = 7
    regression_level: float = 0.95
    family: str = "v4"
    strict: bool = False
    keep_bogons: bool = False
    drop_isolated: bool = False

    def validate(self):
        if self.family not in ("v4", "v6"):
            raise ConfigError(f"family must be v4 or v6, not {self.family!r}")
        if not 0 < self.coverage_target <= 1:
            raise ConfigError("coverage_target must be in (0, 1]")
        if not 0 < self.regression_level < 1:
            raise ConfigError("regression_level must be in (0, 1)")
        for name in ("prune_min_obs", "outage_min_vis", "hijack_learn_window"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.major_min_prefixes < 0:
            raise ConfigError("major_min_prefixes must be >= 0")


_LIST_KEYS = {"mrt", "tables", "asrel"}
_BOOL_VALUES = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


def parse_config_file(path: str | Path) -> dict:
    """Read `key = value` lines; '#' starts a comment, blank lines ignored.
    List-valued keys take comma-separated paths."""
    values: dict = {}
    known = {f.name: f.type for f in fields(RunConfig)}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _coerce(name: str, value, current):
    if name in _LIST_KEYS:
        if isinstance(value, str):
            return [v.strip() for v in value.split(",") if v.strip()]
        return list(value)
    if isinstance(current, bool):
        if isinstance(value, bool):
            return value
        lowered = str(value).lower()
        if lowered not in _BOOL_VALUES:
            raise ConfigError(f"{name}: expected true/false, got {value!r}")
        return _BOOL_VALUES[lowered]
    if isinstance(current, int) and not isinstance(current, bool):
        try:
            return int(value)
        except ValueError:
            raise ConfigError(f"{name}: expected an integer, got {value!r}") from None
    if isinstance(current, float):
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"{name}: expected a number, got {value!r}") from None
    return str(value) if value is not None else None


def load_run_config(config_path: str | None, overrides: dict) -> RunConfig:
    """Defaults, then the config file, then non-None flag overrides."""
    cfg = RunConfig()
    layers = []
    if config_path:
        if not Path(config_path).is_file():
            raise ConfigError(f"config file not found: {config_path}")
        layers.append(parse_config_file(config_path))
    layers.append({k: v for k, v in overrides.items() if v is not None})
    for layer in layers:
        for key, value in layer.items():
            setattr(cfg, key, _coerce(key, value, getattr(cfg, key)))
    cfg.validate()
    return cfg
