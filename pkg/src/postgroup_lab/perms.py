"""Small helpers for permutations given as index tuples."""

from __future__ import annotations

from collections.abc import Sequence


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def compose_perm(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Return p after q, so compose_perm(p, q)[i] == p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(q)))


def invert_perm(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def is_perm(p: Sequence[int]) -> bool:
    n = len(p)
    seen = [False] * n
    for v in p:
        if not isinstance(v, int) or v < 0 or v >= n or seen[v]:
            return False
        seen[v] = True
    return True
