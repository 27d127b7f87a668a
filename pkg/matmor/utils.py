"""
Utility Functions

This module provides the small helpers shared by every other module:
1.  Subset encoding: subsets of [n] are bitmasks (element i <-> bit i-1).
2.  Enumeration bounds: a single place that enforces `settings.max_n`.
3.  Exact rationals: parsing and JSON payloads for `fractions.Fraction`.
4.  Status output: bracket-tagged lines on stderr, shown in debug mode.
"""

import sys
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from .config import settings
from .errors import DescriptorError, ElementOutOfRange, EnumerationBoundExceeded


def status(tag: str, message: str):
    """Print a status line to stderr when debug mode is on."""
    if settings.debug:
        print(f"[{tag.upper()}] {message}", file=sys.stderr)


def check_bound(n: int, bound: Optional[int] = None, what: str = "max_n"):
    """Raise EnumerationBoundExceeded if n is above the bound (default: settings.max_n)."""
    limit = settings.max_n if bound is None else min(bound, settings.max_n)
    if n > limit:
        raise EnumerationBoundExceeded(n, limit, what)


@lru_cache(maxsize=None)
def popcounts(n: int) -> np.ndarray:
    """Cardinalities of all subsets of [n], indexed by bitmask."""
    table = np.zeros(1 << n, dtype=np.int16)
    for b in range(n):
        table[1 << b:1 << (b + 1)] = table[:1 << b] + 1
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def all_masks(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    masks.flags.writeable = False
    return masks


def to_mask(subset: Iterable[int], n: int) -> int:
    """Encode a subset of [n] (1-based elements) as a bitmask."""
    mask = 0
    for element in subset:
        if isinstance(element, bool) or not isinstance(element, (int, np.integer)):
            raise ElementOutOfRange(element, n)
        if element < 1 or element > n:
            raise ElementOutOfRange(int(element), n)
        mask |= 1 << (int(element) - 1)
    return mask


def mask_elements(mask: int) -> List[int]:
    """Sorted 1-based elements of a bitmask."""
    mask = int(mask)
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def subset_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    """Order subsets by cardinality, then lexicographically by sorted elements."""
    elements = mask_elements(mask)
    return len(elements), tuple(elements)


def minimal_mask(masks: Iterable[int]) -> int:
    return min((int(m) for m in masks), key=subset_key)


def insertion_masks(n: int, i: int) -> np.ndarray:
    """
    Map every subset of [n-1] to the subset of [n] obtained by skipping element i.

    This is the order-preserving relabeling used by deletion and contraction:
    element j < i keeps its label, element j >= i becomes j + 1.
    """
    masks = all_masks(n - 1)
    low = (1 << (i - 1)) - 1
    return (masks & low) | ((masks >> (i - 1)) << i)


def as_fraction(value: Any) -> Fraction:
    """
    Parse an exact rational.

    Accepts ints, Fractions, strings like "3/8", and {"num": .., "den": ..} payloads.
    Floats are rejected so that nothing inexact slips into exact computations.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DescriptorError(f"not a rational: {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise DescriptorError(f"not a rational: {value!r} ({e})")
    if isinstance(value, dict) and set(value) == {"num", "den"}:
        num, den = value["num"], value["den"]
        if not isinstance(num, int) or not isinstance(den, int) or den == 0:
            raise DescriptorError(f"not a rational: {value!r}")
        return Fraction(num, den)
    raise DescriptorError(f"not a rational: {value!r}")


def fraction_payload(value: Fraction) -> Dict[str, int]:
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def fraction_text(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
