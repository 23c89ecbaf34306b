"""Pure-Python tableau kernels; the fallback for ``_simplex.pyx`` (same contract)."""


def pivot(rows, obj, r, c):
    """Pivot the tableau in place on row ``r``, column ``c``."""
    prow = rows[r]
    p = prow[c]
    width = len(prow)
    if p != 1:
        for k in range(width):
            if prow[k]:
                prow[k] = prow[k] / p
    nz = [k for k in range(width) if prow[k]]
    for i in range(len(rows)):
        if i == r:
            continue
        row = rows[i]
        f = row[c]
        if f:
            for k in nz:
                row[k] = row[k] - f * prow[k]
    f = obj[c]
    if f:
        for k in nz:
            obj[k] = obj[k] - f * prow[k]


def entering(obj, ncols, allowed):
    """Bland's rule: lowest-index allowed column with negative reduced cost, or -1."""
    for j in range(ncols):
        if allowed[j] and obj[j] < 0:
            return j
    return -1


def leaving(rows, basis, c):
    """Minimum-ratio row for column ``c``; ties go to the lowest basic index. -1 if unbounded."""
    best = -1
    best_ratio = None
    for i in range(len(rows)):
        a = rows[i][c]
        if a > 0:
            ratio = rows[i][-1] / a
            if best < 0 or ratio < best_ratio or (ratio == best_ratio and basis[i] < basis[best]):
                best = i
                best_ratio = ratio
    return best
