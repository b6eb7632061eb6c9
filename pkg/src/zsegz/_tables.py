"""Shared per-group lookup tables for the compute kernels."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .groups import Group


@lru_cache(maxsize=None)
def add_index(group: Group) -> np.ndarray:
    """(g, g) table: add_index[x, y] = index of element(x) + element(y)."""
    elems = list(group.elements())
    g = group.order
    table = np.empty((g, g), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            table[i, j] = group.index(group.add(a, b))
    return table


@lru_cache(maxsize=None)
def multiple_image_mask(group: Group, m: int) -> tuple[bool, ...]:
    """Indicator over element indices of the subgroup {m*c : c in G}."""
    mask = [False] * group.order
    for e in group.elements():
        mask[group.index(group.scalar_mul(m, e))] = True
    return tuple(mask)
