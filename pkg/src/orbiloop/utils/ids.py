"""Identifier helpers.

Constructed groupoids (products, fiber products, loop groupoids, ...) name their
objects and morphisms after the parts they are built from. The encoding is a
compact JSON array, which keeps it injective for arbitrary string parts.
"""
import json
from typing import Iterable, List

from natsort import natsorted

__all__ = ["compound_id", "split_id", "sorted_ids"]


def compound_id(*parts: str) -> str:
    """Injective string encoding of a tuple of identifiers.

    Examples:
        >>> compound_id("x", "g")
        '["x","g"]'
    """
    return json.dumps(list(parts), separators=(",", ":"), ensure_ascii=False)


def split_id(identifier: str) -> List[str]:
    """Inverse of :func:`compound_id`."""
    parts = json.loads(identifier)
    if not isinstance(parts, list):
        raise ValueError(f"'{identifier}' is not a compound identifier")
    return parts


def sorted_ids(ids: Iterable[str]) -> List[str]:
    """Natural sort order used for every report."""
    return natsorted(ids)
