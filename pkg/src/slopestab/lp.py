"""Exact rational linear programming by Fourier-Motzkin elimination.

Problem sizes here are tiny (a handful of variables, at most a few hundred
inequalities), which is the regime where Fourier-Motzkin with row
deduplication is perfectly adequate and keeps every number a Fraction.
Callers are expected to bound the feasible region (box constraints), so an
unbounded objective is treated as a caller bug, not a result.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .ordered import Rational, rat

Row = tuple[tuple[Fraction, ...], Fraction]  # coeffs . x <= rhs


def _row(coeffs: Sequence[Rational], rhs: Rational) -> Row:
    return tuple(rat(c) for c in coeffs), rat(rhs)


def _normalize(rows: list[Row]) -> list[Row] | None:
    """Scale rows canonically, drop slack duplicates, detect constant rows.

    Returns None when a constant row is violated (0 <= negative).
    """
    best: dict[tuple[Fraction, ...], Fraction] = {}
    for coeffs, rhs in rows:
        lead = next((c for c in coeffs if c != 0), None)
        if lead is None:
            if rhs < 0:
                return None
            continue
        scale = abs(lead)
        key = tuple(c / scale for c in coeffs)
        val = rhs / scale
        if key not in best or val < best[key]:
            best[key] = val
    return [(k, v) for k, v in best.items()]


def _eliminate(rows: list[Row], var: int) -> tuple[list[Row], list[Row], list[Row]]:
    """Project out one variable; returns (projected rows, lower rows, upper rows)."""
    uppers = [r for r in rows if r[0][var] > 0]
    lowers = [r for r in rows if r[0][var] < 0]
    kept = [r for r in rows if r[0][var] == 0]
    for ucoeffs, urhs in uppers:
        uc = ucoeffs[var]
        for lcoeffs, lrhs in lowers:
            lc = lcoeffs[var]
            coeffs = tuple(
                a / uc - b / lc for a, b in zip(ucoeffs, lcoeffs)
            )
            kept.append((coeffs, urhs / uc - lrhs / lc))
    return kept, lowers, uppers


def _solve_equalities(
    eqs: list[Row], n: int
) -> tuple[list[int], dict[int, tuple[Fraction, dict[int, Fraction]]]] | None:
    """Gaussian elimination on equality rows.

    Returns (free variable indices, {pivot var: (const, {free var: coeff})})
    with pivot vars expressed as const + sum coeff * free; None if inconsistent.
    """
    rows = [list(coeffs) + [rhs] for coeffs, rhs in eqs]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][col]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][n] != 0:
            return None
    free = [j for j in range(n) if j not in pivots]
    subs: dict[int, tuple[Fraction, dict[int, Fraction]]] = {}
    for row_idx, col in enumerate(pivots):
        const = rows[row_idx][n]
        coeffs = {j: -rows[row_idx][j] for j in free if rows[row_idx][j] != 0}
        subs[col] = (const, coeffs)
    return free, subs


def lp_maximize(
    objective: Sequence[Rational],
    ineqs: Sequence[tuple[Sequence[Rational], Rational]],
    eqs: Sequence[tuple[Sequence[Rational], Rational]] = (),
) -> tuple[Fraction, list[Fraction]] | None:
    """Maximize objective . x subject to ineqs (<=) and eqs (==), exactly.

    Returns (optimal value, an optimal point) or None when infeasible.
    Raises ValueError when the objective is unbounded above on the feasible
    region; callers bound their variables, so this does not happen in normal
    use.
    """
    n = len(objective)
    obj = [rat(c) for c in objective]
    ineq_rows = [_row(c, b) for c, b in ineqs]
    eq_rows = [_row(c, b) for c, b in eqs]
    for coeffs, _ in ineq_rows + eq_rows:
        if len(coeffs) != n:
            raise ValueError("constraint width does not match objective length")

    solved = _solve_equalities(eq_rows, n)
    if solved is None:
        return None
    free, subs = solved
    nf = len(free)
    pos_of = {j: k for k, j in enumerate(free)}

    def project(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[list[Fraction], Fraction]:
        out = [Fraction(0)] * nf
        const = Fraction(0)
        for j, c in enumerate(coeffs):
            if c == 0:
                continue
            if j in subs:
                sub_const, sub_coeffs = subs[j]
                const += c * sub_const
                for k, a in sub_coeffs.items():
                    out[pos_of[k]] += c * a
            else:
                out[pos_of[j]] += c
        return out, rhs - const

    # Work in (free vars, z) coordinates with z <= objective enforced as a row.
    width = nf + 1
    rows: list[Row] = []
    for coeffs, rhs in ineq_rows:
        pc, pr = project(coeffs, rhs)
        rows.append((tuple(pc) + (Fraction(0),), pr))
    obj_coeffs, neg_obj_const = project(obj, Fraction(0))
    obj_const = -neg_obj_const
    rows.append((tuple(-c for c in obj_coeffs) + (Fraction(1),), obj_const))

    stack: list[tuple[int, list[Row], list[Row]]] = []
    remaining = list(range(nf))
    while remaining:
        normalized = _normalize(rows)
        if normalized is None:
            return None
        rows = normalized
        var = min(
            remaining,
            key=lambda v: sum(1 for r in rows if r[0][v] > 0)
            * sum(1 for r in rows if r[0][v] < 0),
        )
        remaining.remove(var)
        rows, lowers, uppers = _eliminate(rows, var)
        stack.append((var, lowers, uppers))

    normalized = _normalize(rows)
    if normalized is None:
        return None
    rows = normalized

    z_upper: Fraction | None = None
    z_lower: Fraction | None = None
    for coeffs, rhs in rows:
        c = coeffs[nf]
        if c > 0:
            bound = rhs / c
            z_upper = bound if z_upper is None else min(z_upper, bound)
        elif c < 0:
            bound = rhs / c
            z_lower = bound if z_lower is None else max(z_lower, bound)
    if z_upper is None:
        raise ValueError("objective is unbounded above; add box constraints")
    if z_lower is not None and z_lower > z_upper:
        return None

    values = [Fraction(0)] * width
    values[nf] = z_upper
    for var, lowers, uppers in reversed(stack):
        lo: Fraction | None = None
        hi: Fraction | None = None
        for coeffs, rhs in lowers:
            bound = (rhs - sum(c * values[j] for j, c in enumerate(coeffs) if j != var)) / coeffs[var]
            lo = bound if lo is None else max(lo, bound)
        for coeffs, rhs in uppers:
            bound = (rhs - sum(c * values[j] for j, c in enumerate(coeffs) if j != var)) / coeffs[var]
            hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            assert lo <= hi, "Fourier-Motzkin back-substitution broke feasibility"
            values[var] = (lo + hi) / 2
        elif lo is not None:
            values[var] = lo
        elif hi is not None:
            values[var] = hi

    point = [Fraction(0)] * n
    for k, j in enumerate(free):
        point[j] = values[k]
    for j, (const, coeffs) in subs.items():
        point[j] = const + sum(a * point[k] for k, a in coeffs.items())

    opt = sum(c * x for c, x in zip(obj, point))
    assert opt == values[nf], "optimum reconstruction mismatch"
    for coeffs, rhs in ineq_rows:
        assert sum(c * x for c, x in zip(coeffs, point)) <= rhs
    for coeffs, rhs in eq_rows:
        assert sum(c * x for c, x in zip(coeffs, point)) == rhs
    return opt, point
