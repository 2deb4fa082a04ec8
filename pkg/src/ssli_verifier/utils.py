"""utils.py: Property lookup helpers and small numeric helpers shared across modules."""

import math
import os
from typing import Any, Iterable

_TRUE_WORDS = ('true', 'yes', '1', 'y', 'on')
_FALSE_WORDS = ('false', 'no', '0', 'n', 'off')


def _raw_value(props: dict, prop_name: str, env_var_name: str | None) -> tuple[Any, Any]:
    """Returns the (property value, environment value) pair for a lookup; either may be None."""

    value = props.get(prop_name, None) if props else None
    env_value = os.getenv(env_var_name) if env_var_name and env_var_name.strip() else None
    return value, env_value


def get_str_property(props: dict, prop_name: str, env_var_name: str | None = None, default_value: str | None = None,
                     ) -> str | None:
    """Gets a string property from the property dictionary, environment variable, or default value.

    Blank values are treated as missing, so a blank property falls through to the
    environment variable and a blank environment variable falls through to the default.

    Args:
        :param props:         Dictionary containing properties.
        :param prop_name:     Name of the property to retrieve.
        :param env_var_name:  Environment variable name to check if the property isn't found in the dictionary.
        :param default_value: Default value to return if the property isn't found in the dictionary or environment.

    Returns:
        String property value, or None if not found and no default value provided.
    """

    value, env_value = _raw_value(props, prop_name, env_var_name)
    for candidate in (value, env_value):
        if candidate is not None and str(candidate).strip():
            return str(candidate)
    return default_value


def get_int_property(props: dict, prop_name: str, env_var_name: str | None = None, default_value: int | None = None,
                     ) -> int | None:
    """Gets an integer property from the property dictionary, environment variable, or default value.

    Unparseable values are skipped, not raised.

    Returns:
        Integer property value, or None if not found and no default value provided.
    """

    value, env_value = _raw_value(props, prop_name, env_var_name)
    for candidate in (value, env_value):
        if isinstance(candidate, bool):
            continue
        if isinstance(candidate, int):
            return candidate
        if candidate is not None:
            try:
                return int(str(candidate).strip())
            except ValueError:
                pass
    return default_value


def get_float_property(props: dict, prop_name: str, env_var_name: str | None = None, default_value: float | None = None,
                       ) -> float | None:
    """Gets a float property from the property dictionary, environment variable, or default value.

    Accepts ints, floats and numeric strings such as "1e-12". Non-finite values are skipped.

    Returns:
        Float property value, or None if not found and no default value provided.
    """

    value, env_value = _raw_value(props, prop_name, env_var_name)
    for candidate in (value, env_value):
        if candidate is None or isinstance(candidate, bool):
            continue
        try:
            parsed = float(str(candidate).strip()) if isinstance(candidate, str) else float(candidate)
        except (TypeError, ValueError):
            continue
        if math.isfinite(parsed):
            return parsed
    return default_value


def get_bool_property(props: dict, prop_name: str, env_var_name: str | None = None, default_value: bool | None = None,
                      ) -> bool | None:
    """Gets a boolean property from the property dictionary, environment variable, or default value.

    Recognized words: true/yes/1/y/on and false/no/0/n/off, case-insensitive.

    Returns:
        Boolean property value, or None if not found and no default value provided.
    """

    value, env_value = _raw_value(props, prop_name, env_var_name)
    for candidate in (value, env_value):
        if isinstance(candidate, bool):
            return candidate
        if isinstance(candidate, (int, float)):
            return bool(candidate)
        if isinstance(candidate, str):
            word = candidate.strip().lower()
            if word in _TRUE_WORDS:
                return True
            if word in _FALSE_WORDS:
                return False
    return default_value


def larger_side(lhs: float, rhs: float, floor: float = 0.0) -> float:
    """Scale for a relative comparison of two sides: max(|lhs|, |rhs|, floor)."""

    return max(abs(lhs), abs(rhs), floor)


def holds_within(margin: float, scale: float, tol: float) -> bool:
    """True iff a signed margin is not below -tol relative to the given scale."""

    return margin >= -tol * scale


def to_hex(values: Iterable[float]) -> list[str]:
    """Exact hexadecimal encodings of floats, for bit-exact replay."""

    return [float(v).hex() for v in values]


def from_hex(values: Iterable[str]) -> list[float]:
    return [float.fromhex(v) for v in values]


def format_number(value: float, digits: int = 6) -> str:
    """Formats a number with a fixed count of significant digits for human tables."""

    if value is None:
        return "-"
    if isinstance(value, bool):
        return str(value).lower()
    return f"{value:.{digits}g}"
