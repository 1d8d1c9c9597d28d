from app.exact.interval import EMPTY, HalfOpenInterval, intersect
from app.exact.rational import (
    ONE,
    ZERO,
    Rational,
    ceil_mul,
    compare,
    floor_mul,
    format_rational,
    parse_rational,
    rat,
)

__all__ = [
    "EMPTY",
    "ONE",
    "ZERO",
    "HalfOpenInterval",
    "Rational",
    "ceil_mul",
    "compare",
    "floor_mul",
    "format_rational",
    "intersect",
    "parse_rational",
    "rat",
]
