"""Minimum-cost perfect matching on square cost matrices."""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from .errors import DimensionTooLarge

Matrix = Sequence[Sequence[float]]

BRUTE_FORCE_LIMIT = 8


def _check_square(m: Matrix) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError("cost matrix must be square; pad it before solving")
        for v in row:
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"cost matrix entries must be finite and non-negative, got {v!r}")
    return n


def pad_square(m: Matrix, row_pad: Sequence[float], col_pad: Sequence[float]) -> list[list[float]]:
    """Pad an r x c matrix to k x k, k = max(r, c).

    ``row_pad[i]`` is the cost of leaving row ``i`` unmatched (its pseudo
    column entry); ``col_pad[j]`` likewise for column ``j``. Pseudo-pseudo
    cells cost 0.
    """
    r = len(m)
    c = len(m[0]) if r else len(col_pad)
    k = max(r, c)
    out = []
    for i in range(k):
        if i < r:
            out.append(list(m[i]) + [row_pad[i]] * (k - c))
        else:
            out.append(list(col_pad) + [0] * (k - c))
    return out


def solve_assignment(m: Matrix) -> tuple[list[int], float]:
    """Kuhn-Munkres with row potentials, O(n^3).

    Returns ``(mapping, total_cost)`` where ``mapping[row] = col``. Integer
    inputs give an exact integer total.
    """
    n = _check_square(m)
    if n == 0:
        return [], 0
    INF = math.inf
    # 1-based arrays; column 0 is a virtual start
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[col] = row
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = INF
            j1 = 0
            row = m[i0 - 1]
            ui0 = u[i0]
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    mapping = [0] * n
    for j in range(1, n + 1):
        mapping[match[j] - 1] = j - 1
    total = sum(m[i][mapping[i]] for i in range(n))
    return mapping, total


def brute_force_assignment(m: Matrix) -> tuple[list[int], float]:
    """Exhaustive minimum over all permutations (n <= 8).

    Ties resolve to the lexicographically smallest mapping.
    """
    n = _check_square(m)
    if n > BRUTE_FORCE_LIMIT:
        raise DimensionTooLarge(f"brute force limited to n <= {BRUTE_FORCE_LIMIT}, got {n}")
    best, best_cost = None, None
    for perm in itertools.permutations(range(n)):
        cost = sum(m[i][perm[i]] for i in range(n))
        if best_cost is None or cost < best_cost:
            best, best_cost = perm, cost
    return list(best), best_cost
