"""Size caps shared by every module.

Flags on the CLI override the defaults; ``STR0D_HARD_CAP`` bounds the size of
any frame read from user input or passed to :func:`congruence_lattice`.
"""
import os

from .errors import BoundExceeded

FRAME_ENUM_BOUND = 7
ORACLE_BOUND = 5
RECOGNIZER_BOUND = 16
JOIN_IRREDUCIBLE_CAP = 12


def hard_cap() -> int:
    raw = os.environ.get("STR0D_HARD_CAP", "20")
    try:
        value = int(raw)
    except ValueError:
        raise BoundExceeded(f"STR0D_HARD_CAP is not an integer: {raw!r}") from None
    if value < 1:
        raise BoundExceeded("STR0D_HARD_CAP must be positive")
    return value


def check_bound(size: int, bound: int, what: str) -> None:
    if size > bound:
        raise BoundExceeded(f"{what}: size {size} exceeds bound {bound}")
