"""Small shared helpers: deterministic parallel mapping and JSON rendering."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> list[R]:
    """Map preserving input order; results are identical for any thread count."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def frac_json(value: Fraction) -> int | str:
    """Exact JSON rendering: integers stay integers, other rationals are "p/q"."""
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Parse an integer or "p/q" string."""
    return Fraction(text)


def ceil_div(a: int, b: int) -> int:
    """Ceiling division for positive b; exact for negative a as well."""
    if b <= 0:
        raise ValueError("ceil_div requires a positive divisor")
    return -((-a) // b)
