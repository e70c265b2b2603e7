"""Finite group algebras C[G] through their left regular representation.

Cayley tables are 0-indexed, ``table[a][b] = a * b`` (row = left factor) and
element 0 must be the identity.
"""

from itertools import permutations
from typing import List, Sequence

import numpy as np

from ..errors import NotAGroup
from .presentation import GeneratorPresentation


def validate_cayley_table(table: Sequence[Sequence[int]]) -> np.ndarray:
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
        raise NotAGroup("closure", f"table must be a non-empty square array, got shape {t.shape}")
    m = t.shape[0]
    if not np.issubdtype(t.dtype, np.integer) or t.min() < 0 or t.max() >= m:
        raise NotAGroup("closure", f"entries must be integers in 0..{m - 1}")
    e = np.arange(m)
    if not (np.array_equal(t[0], e) and np.array_equal(t[:, 0], e)):
        raise NotAGroup("identity", "element 0 is not a two-sided identity")
    # (ab)c == a(bc) for all a, b, c
    left = t[t[:, :, None], e[None, None, :]]
    right = t[e[:, None, None], t[None, :, :]]
    if not np.array_equal(left, right):
        a, b, c = np.argwhere(left != right)[0]
        raise NotAGroup("associativity", f"({a}*{b})*{c} != {a}*({b}*{c})")
    for a in range(m):
        if not any(t[a, b] == 0 and t[b, a] == 0 for b in range(m)):
            raise NotAGroup("inverses", f"element {a} has no two-sided inverse")
    return t


def group_algebra(cayley_table: Sequence[Sequence[int]]) -> GeneratorPresentation:
    """Permutation matrices L_g e_h = e_{gh} of every group element.

    L_g* = L_{g^-1}, which is the involution of C[G] viewed inside L^1(G).
    """
    t = validate_cayley_table(cayley_table)
    m = t.shape[0]
    generators: List[np.ndarray] = []
    for g in range(m):
        perm = np.zeros((m, m))
        perm[t[g], np.arange(m)] = 1.0
        generators.append(perm)
    return GeneratorPresentation.from_generators(generators)


def cyclic_group_table(n: int) -> List[List[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group_table(n: int) -> List[List[int]]:
    """S_n with permutations in lexicographic order, so the identity comes first"""
    elements = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(elements)}
    return [
        [index[tuple(s[t[i]] for i in range(n))] for t in elements]
        for s in elements
    ]
