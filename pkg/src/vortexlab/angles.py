"""Parsing of angle literals such as ``pi/2``, ``-pi/4`` or ``3pi/4``."""

from __future__ import annotations

import math
import re

_PI_FORM = re.compile(
    r"""^\s*(?P<sign>[+-]?)\s*
    (?P<num>\d+(?:\.\d*)?)?\s*\*?\s*
    pi\s*
    (?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$""",
    re.VERBOSE | re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Parse a decimal or a rational multiple of pi.

    ``pi`` forms are evaluated as ``sign * num * math.pi / den`` so the same
    literal always produces the same double.

    Raises:
        ValueError: unparseable input.
    """
    s = str(text).strip()
    m = _PI_FORM.match(s)
    if m:
        num = float(m.group("num")) if m.group("num") else 1.0
        den = float(m.group("den")) if m.group("den") else 1.0
        if den == 0:
            raise ValueError(f"zero denominator in angle {text!r}")
        value = num * math.pi / den
        return -value if m.group("sign") == "-" else value
    try:
        value = float(s)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite, got {text!r}")
    return value
