"""Resource limits and the line-oriented run-control config format.

Config files are plain text: one `key = value` per line for global
settings, blank lines and `#` comments ignored.  A `[run]` header starts
a work item; the keys inside it (group, prime, theorem, kind, t, ...)
describe one verification or collection run.
"""

from dataclasses import dataclass, replace, fields

from .errors import ConfigError


@dataclass(frozen=True)
class Limits:
    max_group_order: int = 10**6
    max_class_elements: int = 200_000
    max_sylow_order: int = 512
    element_list_cap: int = 512
    enumeration_cap: int = 20_000
    max_subgroup_classes: int = 10_000
    max_poset_elements: int = 20_000
    max_simplices: int = 200_000
    max_coset_index: int = 100_000
    max_quotient_degree: int = 20_000
    scan_budget: int = 1_000_000
    seed: int = 1


DEFAULT_LIMITS = Limits()

_LIMIT_KEYS = {f.name for f in fields(Limits)}

# Aliases accepted in config files and on the command line.
_KEY_ALIASES = {"max_order": "max_group_order"}


def limits_with(base=None, **overrides):
    """Return a Limits with the given fields replaced."""
    base = base or DEFAULT_LIMITS
    clean = {}
    for key, value in overrides.items():
        key = _KEY_ALIASES.get(key, key)
        if key not in _LIMIT_KEYS:
            raise ConfigError(f"unknown setting: {key}")
        clean[key] = value
    return replace(base, **clean)


def parse_config(text):
    """Parse config text into (Limits, list of run dicts)."""
    settings = {}
    runs = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if line != "[run]":
                raise ConfigError(f"line {lineno}: unknown section {line!r}")
            current = {}
            runs.append(current)
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if current is None:
            key = _KEY_ALIASES.get(key, key)
            if key not in _LIMIT_KEYS:
                raise ConfigError(f"line {lineno}: unknown setting: {key}")
            try:
                settings[key] = int(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} needs an integer, got {value!r}")
        else:
            current[key] = value
    try:
        limits = limits_with(**settings)
    except ConfigError:
        raise
    return limits, runs
