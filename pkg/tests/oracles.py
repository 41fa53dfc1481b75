"""Independent brute-force oracles used by the test suite.

None of these share code with the paths they check.
"""

import itertools
from fractions import Fraction
from functools import lru_cache


def alignment_distance(ref, hyp):
    """Minimum edit-script cost by memoized recursion over all scripts."""
    ref, hyp = tuple(ref), tuple(hyp)

    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(ref):
            return len(hyp) - j
        if j == len(hyp):
            return len(ref) - i
        pair = go(i + 1, j + 1) + (ref[i] != hyp[j])
        return min(pair, go(i + 1, j) + 1, go(i, j + 1) + 1)

    return go(0, 0)


def alignment_decompositions(ref, hyp):
    """Every (S, D, I) triple reachable by some monotone edit script."""
    ref, hyp = tuple(ref), tuple(hyp)

    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(ref) and j == len(hyp):
            return frozenset({(0, 0, 0)})
        out = set()
        if i < len(ref) and j < len(hyp):
            s = int(ref[i] != hyp[j])
            out |= {(a + s, b, c) for a, b, c in go(i + 1, j + 1)}
        if i < len(ref):
            out |= {(a, b + 1, c) for a, b, c in go(i + 1, j)}
        if j < len(hyp):
            out |= {(a, b, c + 1) for a, b, c in go(i, j + 1)}
        return frozenset(out)

    return go(0, 0)


def optimal_decompositions(ref, hyp):
    triples = alignment_decompositions(ref, hyp)
    best = min(sum(t) for t in triples)
    return {t for t in triples if sum(t) == best}


def permutation_minimum(matrix):
    n = len(matrix)
    return min(sum(matrix[i][p[i]] for i in range(n)) for p in itertools.permutations(range(n)))


def grid_attribution(ref_segments, hyp_segments, registered, collar_ms=0):
    """1 ms grid attribution.

    Segments are (speaker, start_ms, end_ms). Returns
    (per_speaker {label: [correct, miss, fa, conf, dur]}, unregistered_fa).
    """
    T = max([e for _, _, e in ref_segments] + [e for _, _, e in hyp_segments] + [0])

    def active(segments, t):
        return {spk for spk, s, e in segments if s <= t < e}

    # reference boundaries = change points of each speaker's per-ms activity
    ref_on = [active(ref_segments, t) for t in range(T)]
    bounds = set()
    for spk in {s for s, _, _ in ref_segments}:
        prev = False
        for t in range(T + 1):
            cur = t < T and spk in ref_on[t]
            if cur != prev:
                bounds.add(t)
            prev = cur

    def excluded(t):
        return collar_ms > 0 and any(b - collar_ms <= t and t + 1 <= b + collar_ms for b in bounds)

    per = {s: [0, 0, 0, 0, 0] for s in registered}
    stray_fa = 0
    for t in range(T):
        if excluded(t):
            continue
        R = ref_on[t]
        H = active(hyp_segments, t)
        for s in registered:
            if s in R:
                per[s][4] += 1
                if s in H:
                    per[s][0] += 1
                elif not H:
                    per[s][1] += 1
                else:
                    per[s][3] += 1
            elif s in H and not R:
                per[s][2] += 1
        if not R and any(h not in registered for h in H):
            stray_fa += 1
    return per, stray_fa


def grid_ier(ref_segments, hyp_segments, registered, collar_ms=0):
    per, stray = grid_attribution(ref_segments, hyp_segments, registered, collar_ms)
    errors = sum(v[1] + v[2] + v[3] for v in per.values()) + stray
    total = sum(v[4] for v in per.values())
    return Fraction(errors, total)


def raster_iou(a, b, step=0.01):
    """IoU by counting grid-cell centres inside each box."""
    lo_x = min(a[0], b[0])
    hi_x = max(a[2], b[2])
    lo_y = min(a[1], b[1])
    hi_y = max(a[3], b[3])
    nx = round((hi_x - lo_x) / step)
    ny = round((hi_y - lo_y) / step)
    inter = union = 0
    for i in range(nx):
        x = lo_x + (i + 0.5) * step
        for j in range(ny):
            y = lo_y + (j + 0.5) * step
            in_a = a[0] <= x <= a[2] and a[1] <= y <= a[3]
            in_b = b[0] <= x <= b[2] and b[1] <= y <= b[3]
            inter += in_a and in_b
            union += in_a or in_b
    return inter / union if union else 0.0
