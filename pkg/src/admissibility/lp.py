"""Exact rational linear programming.

Two-phase primal simplex over :class:`fractions.Fraction` with Bland's rule.
The tableau kernels come from the compiled ``_simplex`` extension when it is
built, otherwise from the pure-Python ``_simplex_py`` module.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import _simplex_py

try:
    from . import _simplex as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNELS = {"python": _simplex_py}
if _compiled is not None:
    KERNELS["cython"] = _compiled

if _compiled is not None and not os.environ.get("ADMISSIBILITY_PURE_PYTHON"):
    DEFAULT_BACKEND = "cython"
else:
    DEFAULT_BACKEND = "python"

LE, EQ, GE = "<=", "==", ">="
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


class LPError(ValueError):
    pass


@dataclass
class LinearProgram:
    """``sense`` c.x subject to rows and per-variable bounds.

    A lower bound of ``None`` makes the variable free below; upper bounds
    default to ``None`` (unbounded above).
    """

    n: int
    objective: Sequence
    rows: list = field(default_factory=list)
    sense: str = "max"
    lower: Optional[list] = None
    upper: Optional[list] = None

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise LPError(f"unknown sense {self.sense!r}")
        self.objective = [Fraction(v) for v in self.objective]
        if len(self.objective) != self.n:
            raise LPError("objective length differs from variable count")
        if self.lower is None:
            self.lower = [Fraction(0)] * self.n
        if self.upper is None:
            self.upper = [None] * self.n
        if len(self.lower) != self.n or len(self.upper) != self.n:
            raise LPError("bounds length differs from variable count")
        self.lower = [None if b is None else Fraction(b) for b in self.lower]
        self.upper = [None if b is None else Fraction(b) for b in self.upper]
        rows = []
        for row in self.rows:
            rows.append(self._normalize_row(*row))
        self.rows = rows

    def _normalize_row(self, coeffs, rel, rhs):
        if rel not in (LE, EQ, GE):
            raise LPError(f"unknown relation {rel!r}")
        coeffs = [Fraction(a) for a in coeffs]
        if len(coeffs) != self.n:
            raise LPError(f"row has {len(coeffs)} coefficients, expected {self.n}")
        return coeffs, rel, Fraction(rhs)

    def add(self, coeffs, rel, rhs):
        self.rows.append(self._normalize_row(coeffs, rel, rhs))
        return self

    def value(self, x) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), Fraction(0))

    def violations(self, x) -> list[str]:
        """Every constraint or bound ``x`` breaks, checked exactly."""
        out = []
        for k, (coeffs, rel, rhs) in enumerate(self.rows):
            lhs = sum((a * v for a, v in zip(coeffs, x)), Fraction(0))
            ok = lhs <= rhs if rel == LE else lhs >= rhs if rel == GE else lhs == rhs
            if not ok:
                out.append(f"row {k}: {lhs} {rel} {rhs} fails")
        for j, v in enumerate(x):
            if self.lower[j] is not None and v < self.lower[j]:
                out.append(f"x{j} = {v} below {self.lower[j]}")
            if self.upper[j] is not None and v > self.upper[j]:
                out.append(f"x{j} = {v} above {self.upper[j]}")
        return out


@dataclass(frozen=True)
class LpOutcome:
    status: str
    value: Optional[Fraction] = None
    x: Optional[tuple] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _standard_form(lp: LinearProgram):
    """Rewrite with nonnegative columns only.

    Returns the column map (original var -> list of (column, sign, offset))
    plus rows and objective over the new columns.
    """
    cols = []  # per original variable: (offset, [(col, sign)])
    ncols = 0
    extra_rows = []
    for j in range(lp.n):
        lo, hi = lp.lower[j], lp.upper[j]
        if lo is not None:
            cols.append((lo, [(ncols, 1)]))
            if hi is not None:
                extra_rows.append(({ncols: Fraction(1)}, LE, hi - lo))
            ncols += 1
        elif hi is not None:
            cols.append((hi, [(ncols, -1)]))
            ncols += 1
        else:
            cols.append((Fraction(0), [(ncols, 1), (ncols + 1, -1)]))
            ncols += 2

    def translate(coeffs):
        out = {}
        shift = Fraction(0)
        for j, a in enumerate(coeffs):
            if not a:
                continue
            off, parts = cols[j]
            shift += a * off
            for c, sign in parts:
                out[c] = out.get(c, 0) + sign * a
        return out, shift

    rows = []
    for coeffs, rel, rhs in lp.rows:
        sparse, shift = translate(coeffs)
        rows.append((sparse, rel, rhs - shift))
    rows.extend(extra_rows)
    obj, obj_shift = translate(lp.objective)
    if lp.sense == "min":
        obj = {c: -v for c, v in obj.items()}
    return cols, ncols, rows, obj, obj_shift


def _price(rows, basis, cost, width):
    obj = [-cost[j] if j < len(cost) else Fraction(0) for j in range(width)]
    for i, b in enumerate(basis):
        cb = cost[b]
        if cb:
            row = rows[i]
            for k in range(width):
                if row[k]:
                    obj[k] += cb * row[k]
    return obj


def _run(kernel, rows, obj, basis, allowed, ncols):
    while True:
        c = kernel.entering(obj, ncols, allowed)
        if c < 0:
            return True
        r = kernel.leaving(rows, basis, c)
        if r < 0:
            return False
        kernel.pivot(rows, obj, r, c)
        basis[r] = c


def solve(lp: LinearProgram, backend: str | None = None) -> LpOutcome:
    """Solve ``lp`` exactly. Optimal points are re-verified before returning."""
    try:
        kernel = KERNELS[backend or DEFAULT_BACKEND]
    except KeyError:
        raise LPError(f"unknown backend {backend!r} (available: {', '.join(sorted(KERNELS))})") from None
    cols, nstruct, srows, sobj, obj_shift = _standard_form(lp)

    # Column layout: structural | slack/surplus | artificial | rhs
    nslack = sum(1 for _, rel, _ in srows if rel != EQ)
    nart = sum(1 for _, rel, rhs in srows if rel == EQ or (rel == LE) == (rhs < 0))
    ncols = nstruct + nslack + nart
    width = ncols + 1
    rows, basis = [], []
    s_at, a_at = nstruct, nstruct + nslack
    for sparse, rel, rhs in srows:
        row = [Fraction(0)] * width
        for c, v in sparse.items():
            row[c] = v
        row[-1] = rhs
        slack = None
        if rel != EQ:
            slack = s_at
            row[s_at] = Fraction(1 if rel == LE else -1)
            s_at += 1
        if rhs < 0:
            row = [-v for v in row]
        if slack is not None and row[slack] == 1:
            basis.append(slack)
        else:
            row[a_at] = Fraction(1)
            basis.append(a_at)
            a_at += 1
        rows.append(row)
    assert a_at == ncols

    artificial = set(range(nstruct + nslack, ncols))
    if artificial:
        cost1 = [Fraction(0)] * ncols
        for a in artificial:
            cost1[a] = Fraction(-1)
        obj = _price(rows, basis, cost1, width)
        _run(kernel, rows, obj, basis, [True] * ncols, ncols)
        if obj[-1] != 0:
            return LpOutcome(INFEASIBLE)
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(rows):
            if basis[i] in artificial:
                c = next((k for k in range(nstruct + nslack) if rows[i][k]), None)
                if c is None:
                    del rows[i], basis[i]
                    continue
                kernel.pivot(rows, obj, i, c)
                basis[i] = c
            i += 1

    cost2 = [Fraction(0)] * ncols
    for c, v in sobj.items():
        cost2[c] = v
    obj = _price(rows, basis, cost2, width)
    allowed = [k not in artificial for k in range(ncols)]
    if not _run(kernel, rows, obj, basis, allowed, ncols):
        return LpOutcome(UNBOUNDED)

    z = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        z[b] = rows[i][-1]
    x = []
    for off, parts in cols:
        x.append(off + sum((sign * z[c] for c, sign in parts), Fraction(0)))
    x = tuple(x)
    bad = lp.violations(x)
    if bad:
        raise AssertionError(f"simplex returned an infeasible point: {bad}")
    value = lp.value(x)
    expected = obj[-1] + obj_shift if lp.sense == "max" else -obj[-1] + obj_shift
    if value != expected:
        raise AssertionError(f"objective mismatch: {value} != {expected}")
    return LpOutcome(OPTIMAL, value, x)
