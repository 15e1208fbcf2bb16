from __future__ import annotations

JSON_SAFE_INT = 2**53


def safe_int(v: int):
    """Integers beyond the IEEE-754 exact range are emitted as decimal strings."""
    v = int(v)
    return str(v) if abs(v) > JSON_SAFE_INT else v


def decimal(x, digits: int = 6) -> str:
    return f"{float(x):.{digits}g}"
