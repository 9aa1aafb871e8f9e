"""Text configuration of runs.

A configuration is a list of ``key=value`` entries separated by commas or
newlines; ``#`` starts a comment. Example::

    case=heat1d1v, eps=1e-2
    order=2
    walls.right.T=1.5
    mg.pre_smooth=3
"""
import itertools

from ..cases import load_case, check_case, WALL_FACES
from ..iterate import METHODS

_BOOL = {"1": True, "true": True, "yes": True, "on": True,
         "0": False, "false": False, "no": False, "off": False}


def _to_bool(s):
    if s.lower() not in _BOOL:
        raise ValueError("expected a boolean, got %r" % s)
    return _BOOL[s.lower()]


def _to_vector(s):
    return [float(x) for x in s.replace(";", " ").split()]


def _to_optional_float(s):
    return None if s.lower() == "none" else float(s)


def _to_method(s):
    if s not in METHODS:
        raise ValueError("expected one of %s, got %r" % (METHODS, s))
    return s


# top-level keys and their converters
TOP_KEYS = {
    "N": int,
    "K": int,
    "L": float,
    "order": int,
    "method": _to_method,
    "outer_tol": float,
    "inner_tol": float,
    "max_outer": int,
    "max_inner": int,
    "mass": _to_optional_float,
    "tau": float,
    "out": str,
    "threads": int,
}
MG_KEYS = {"pre_smooth": int, "post_smooth": int, "coarsest_cells": int}
SPECTRAL_KEYS = {"R": float, "n_radial": int, "n_angle": int, "cache": str}
WALL_KEYS = {"T": float, "U": _to_vector}


class ConfigError(ValueError):
    """Raised for malformed or inconsistent configuration entries."""
    def __init__(self, message, line=None, field=None):
        prefix = "line %d: " % line if line is not None else ""
        if field is not None:
            prefix += "%s: " % field
        super(ConfigError, self).__init__(prefix + message)
        self.line = line
        self.field = field


def tokenize(text):
    """
    Split configuration text into entries.

    Returns
    -------
    list
        (line number, key, raw value) triples in order of appearance.
    """
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        for item in line.split(","):
            item = item.strip()
            if not item:
                continue
            if "=" not in item:
                raise ConfigError("expected key=value, got %r" % item, line=lineno)
            key, value = (s.strip() for s in item.split("=", 1))
            if not key or not value:
                raise ConfigError("empty key or value in %r" % item, line=lineno)
            entries.append((lineno, key, value))
    return entries


def _convert(convert, value, lineno, key):
    try:
        return convert(value)
    except ValueError as e:
        raise ConfigError(str(e), line=lineno, field=key)


def _build_case(entries):
    head = {"case": None, "eps": 1.0, "full_scale": False}
    rest = []
    for lineno, key, value in entries:
        if key == "case":
            head["case"] = value
        elif key == "eps":
            head["eps"] = _convert(float, value, lineno, key)
        elif key == "full_scale":
            head["full_scale"] = _convert(_to_bool, value, lineno, key)
        else:
            rest.append((lineno, key, value))
    if head["case"] is None:
        raise ConfigError("missing required key", field="case")
    try:
        case = load_case(head["case"], eps=head["eps"], full_scale=head["full_scale"])
    except ValueError as e:
        raise ConfigError(str(e), field="case")

    lines = {}
    for lineno, key, value in rest:
        parts = key.split(".")
        if len(parts) == 1 and key in TOP_KEYS:
            case[key] = _convert(TOP_KEYS[key], value, lineno, key)
        elif len(parts) == 2 and parts[0] == "mg" and parts[1] in MG_KEYS:
            case["mg"][parts[1]] = _convert(MG_KEYS[parts[1]], value, lineno, key)
        elif len(parts) == 2 and parts[0] == "spectral" and parts[1] in SPECTRAL_KEYS:
            case["spectral"][parts[1]] = _convert(SPECTRAL_KEYS[parts[1]], value, lineno, key)
        elif len(parts) == 3 and parts[0] == "walls" and parts[2] in WALL_KEYS:
            if parts[1] not in WALL_FACES[case["dim_x"]]:
                raise ConfigError("no wall named %r in a %dD case" % (parts[1], case["dim_x"]),
                                  line=lineno, field=key)
            case["walls"][parts[1]][parts[2]] = _convert(WALL_KEYS[parts[2]], value, lineno, key)
        else:
            raise ConfigError("unknown key", line=lineno, field=key)
        lines[parts[0] if parts[0] != "walls" else key] = lineno

    try:
        check_case(case)
    except ValueError as e:
        field = str(e).split(":", 1)[0]
        raise ConfigError(str(e).split(": ", 1)[-1], line=lines.get(field), field=field)
    if case["method"] == "SI" and (case["order"] != 1 or case["collision"]["variant"] != "BGK"):
        raise ConfigError("SI is available for the first-order BGK scheme only",
                          line=lines.get("method"), field="method")
    return case


def _with_overrides(text, overrides):
    entries = tokenize(text)
    for key, value in (overrides or {}).items():
        if value is not None:
            entries.append((None, key, str(value)))
    return entries


def parse_config(text, overrides=None):
    """
    Parse a run configuration.

    Parameters
    ----------
    text: str
        Configuration text.
    overrides: dict
        Entries applied after the text, e.g. from command-line flags.
        None values are skipped.

    Returns
    -------
    dict
        Checked case configuration with defaults filled.
    """
    return _build_case(_with_overrides(text, overrides))


def expand_matrix(text, overrides=None):
    """
    Parse a benchmark matrix whose values may list alternatives separated
    by '|', e.g. ``method=SGS-FP|SGS-PFP, eps=1|1e-2``.

    Returns
    -------
    list
        One checked case configuration per combination, in product order.
    """
    entries = _with_overrides(text, overrides)
    choices = [[(lineno, key, v.strip()) for v in value.split("|")] for lineno, key, value in entries]
    return [_build_case(list(combo)) for combo in itertools.product(*choices)]
