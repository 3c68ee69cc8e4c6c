"""Exact sparse Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction


class LinearSystemError(ArithmeticError):
    def __init__(self, msg, system=None):
        super().__init__(msg)
        self.system = system


class NoSolution(LinearSystemError):
    pass


class NonUniqueSolution(LinearSystemError):
    pass


def solve(rows, unknowns, unique=True):
    """Solve sum_u row[u] * x_u = rhs for each ``(row, rhs)`` in ``rows``.

    ``row`` is a dict unknown -> coefficient.  Returns a dict unknown ->
    Fraction.  With ``unique=False`` free unknowns are set to zero.
    """
    unknowns = list(unknowns)
    order = {u: i for i, u in enumerate(unknowns)}
    pivots = {}  # pivot unknown -> (row, rhs), row normalized to 1 at the pivot
    system = [(dict(r), rhs) for r, rhs in rows]
    for row, rhs in system:
        row = {u: Fraction(c) for u, c in row.items() if c}
        rhs = Fraction(rhs)
        for u in sorted(row, key=order.__getitem__):
            if u in pivots and u in row:
                prow, prhs = pivots[u]
                f = row[u]
                for v, c in prow.items():
                    w = row.get(v, 0) - f * c
                    if w:
                        row[v] = w
                    else:
                        row.pop(v, None)
                rhs -= f * prhs
        if not row:
            if rhs:
                raise NoSolution("inconsistent linear system", system)
            continue
        p = min(row, key=order.__getitem__)
        f = row[p]
        row = {v: c / f for v, c in row.items()}
        rhs /= f
        # keep the pivot table fully reduced
        for q, (qrow, qrhs) in list(pivots.items()):
            g = qrow.get(p)
            if g:
                for v, c in row.items():
                    w = qrow.get(v, 0) - g * c
                    if w:
                        qrow[v] = w
                    else:
                        qrow.pop(v, None)
                pivots[q] = (qrow, qrhs - g * rhs)
        pivots[p] = (row, rhs)
    free = [u for u in unknowns if u not in pivots]
    if free and unique:
        raise NonUniqueSolution(f"solution is not unique; free unknowns {free}", system)
    sol = {u: Fraction(0) for u in free}
    for p, (row, rhs) in pivots.items():
        sol[p] = rhs - sum((c * sol[v] for v, c in row.items() if v != p), Fraction(0))
    return sol
