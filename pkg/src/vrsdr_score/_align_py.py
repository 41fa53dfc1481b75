"""Pure-Python edit-distance kernels.

Same contract as the compiled ``_align_ext`` module: both functions take
two sequences of integer token ids.
"""


def edit_distance(ref, hyp):
    """Unit-cost Levenshtein distance using two DP rows."""
    if len(ref) < len(hyp):
        ref, hyp = hyp, ref
    m = len(hyp)
    prev = list(range(m + 1))
    for i, r in enumerate(ref, 1):
        cur = [i] + [0] * m
        for j in range(1, m + 1):
            if r == hyp[j - 1]:
                cur[j] = prev[j - 1]
            else:
                a = prev[j - 1]
                b = prev[j]
                c = cur[j - 1]
                cur[j] = 1 + (a if a <= b and a <= c else (b if b <= c else c))
        prev = cur
    return prev[m]


def edit_counts(ref, hyp):
    """Return ``(substitutions, deletions, insertions, corrects)``.

    Backtrace from the full matrix prefers correct > substitution >
    deletion > insertion among optimal moves.
    """
    n, m = len(ref), len(hyp)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for j in range(m + 1):
        d[0][j] = j
    for i in range(1, n + 1):
        row, up = d[i], d[i - 1]
        row[0] = i
        r = ref[i - 1]
        for j in range(1, m + 1):
            if r == hyp[j - 1]:
                row[j] = up[j - 1]
            else:
                a = up[j - 1]
                b = up[j]
                c = row[j - 1]
                row[j] = 1 + (a if a <= b and a <= c else (b if b <= c else c))

    sub = dele = ins = cor = 0
    i, j = n, m
    while i > 0 or j > 0:
        cur = d[i][j]
        if i > 0 and j > 0:
            if ref[i - 1] == hyp[j - 1] and d[i - 1][j - 1] == cur:
                cor += 1
                i -= 1
                j -= 1
                continue
            if ref[i - 1] != hyp[j - 1] and d[i - 1][j - 1] + 1 == cur:
                sub += 1
                i -= 1
                j -= 1
                continue
        if i > 0 and d[i - 1][j] + 1 == cur:
            dele += 1
            i -= 1
        else:
            ins += 1
            j -= 1
    return sub, dele, ins, cor
