"""Recover the degree-2 multiplicative law from its unambiguous entries.

Every orbit slot ``(l; i >= j >= k)`` with ``i + j + k - l`` equal to 1 or 2
gets an unknown of the right ring degree: ``c * tau * gamma^-1`` in degree
-2 and ``(a + b eps) * gamma^-1`` in degree -4.  The published unambiguous
entries are imposed as equations, together with the linear axioms (neutral
element, semi-neutrality, eps-linearity).  Associativity is then solved one
filtration degree at a time: its filtration-1 part is affine in the
degree -2 unknowns, and once those are known its filtration-2 part is
affine in the degree -4 unknowns.  Affine maps are recovered by evaluating
at zero and at unit vectors.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .ftl import FTL, _ADDITIVE, _eps_table, associativity_images
from .rings import GAMMA_INV, MUL, TAU, ZEPS, ZEps


class RepairFailed(ArithmeticError):
    pass


TG = TAU * GAMMA_INV
G = GAMMA_INV

# Entries whose index placement is unambiguous.
KNOWN = {
    (1, 1, 1, 0): TG,
    (1, 1, 1, 1): G,
    (2, 2, 1, 0): TG * 2,
    (2, 1, 1, 1): TG * -3,
    (3, 3, 1, 0): TG,
    (3, 2, 1, 1): TG * 3,
    (4, 3, 1, 1): TG * -1,
    (4, 2, 2, 1): TG * 2,
    (4, 2, 2, 2): G,
}

# Values listed against colliding indices; their placement is an output.
AMBIGUOUS = [TG * -2, G, G]


def _partitions3(n):
    return [(i, j, n - i - j) for i in range(n, -1, -1) for j in range(min(i, n - i), -1, -1)
            if 0 <= n - i - j <= j]


def slots(filtration):
    out = []
    for l in range(1, 5):
        for p in _partitions3(l + filtration):
            out.append((l,) + p)
    return out


def _unknowns(filtration):
    names = []
    for s in slots(filtration):
        if filtration == 1:
            names.append((s, "tau"))
        else:
            names.extend([(s, "1"), (s, "eps")])
    return names


def _value(name, x):
    slot, kind = name
    x = int(x) if Fraction(x).denominator == 1 else Fraction(x)
    if kind == "tau":
        return TG * x
    if kind == "1":
        return G * x
    return G * ZEps(0, x)


def _law(values: dict) -> FTL:
    table = {k: MUL.coerce(v) for k, v in _eps_table(ZEPS, _ADDITIVE).items()}
    for name, x in values.items():
        if x:
            slot = name[0]
            table[slot] = table.get(slot, MUL.zero) + _value(name, x)
    return FTL(MUL, table)


def _coords(x):
    return MUL.coordinates(x)


def _linear_rows(names, filtration):
    """Known entries plus the linear axioms, restricted to the given unknowns."""
    rows = []
    by_slot = {}
    for name in names:
        by_slot.setdefault(name[0], []).append(name)
    for slot, group in by_slot.items():
        l, i, j, k = slot
        # generic element of the slot as coordinates -> {unknown: coefficient}
        expr = {}
        for name in group:
            for c, v in _coords(_value(name, 1)).items():
                expr.setdefault(c, {})[name] = v
        if slot in KNOWN:
            target = _coords(KNOWN[slot])
            for c in set(expr) | set(target):
                rows.append((expr.get(c, {}), target.get(c, 0)))
        if j == 0 and k == 0:
            # neutral element: only a^l_l00 survive in F_t(x,0,0)
            for c in expr:
                rows.append((expr[c], 0))
        if (i - l) % 2 and filtration == 2:
            # eps-linearity: (1 + eps) a = 0, i.e. a + b = 0 on (a + b eps) gamma^-1
            rows.append(({(slot, "1"): 1, (slot, "eps"): 1}, 0))
    # semi-neutral: sum_{i+j=n} a^4_{ij0} = 0
    for n in range(5 + filtration):
        if n - 4 != filtration:
            continue
        acc = {}
        for i in range(n + 1):
            rep = (4,) + tuple(sorted((i, n - i, 0), reverse=True))
            for name in by_slot.get(rep, []):
                for c, v in _coords(_value(name, 1)).items():
                    acc.setdefault(c, {})
                    acc[c][name] = acc[c].get(name, 0) + v
        for row in acc.values():
            rows.append((row, 0))
    return rows


def _assoc_diff(values, N):
    # filtration-N part of lhs - rhs, read through the homogeneous images
    out = {}
    for n, (lhs, rhs) in enumerate(associativity_images(_law(values), N)):
        for L in range(max(lhs.n, rhs.n) + 1):
            a = lhs[L]._t
            b = rhs[L]._t
            codec = lhs[L]._c
            for key in set(a) | set(b):
                if codec.degree(key) - L != N:
                    continue
                d = a.get(key, 0) - b.get(key, 0)
                if d:
                    out[(n, L, key)] = d
    return out


def _solve_filtration(fixed: dict, filtration: int) -> dict:
    names = _unknowns(filtration)
    rows = _linear_rows(names, filtration)
    base = _assoc_diff(fixed, filtration)
    cols = {}
    for name in names:
        vals = dict(fixed)
        vals[name] = 1
        cols[name] = _assoc_diff(vals, filtration)
    eqs = set(base)
    for c in cols.values():
        eqs |= set(c)
    for e in sorted(eqs, key=repr):
        b0 = base.get(e, 0)
        rows.append(({n: cols[n].get(e, 0) - b0 for n in names}, -b0))
    try:
        return linalg.solve(rows, names)
    except linalg.LinearSystemError as exc:
        raise RepairFailed(f"filtration {filtration}: {exc}") from exc


def repair_multiplicative():
    """Solve for the degree-2 completion.  Returns (law, solution by slot)."""
    sol1 = _solve_filtration({}, 1)
    sol2 = _solve_filtration(sol1, 2)
    values = {**sol1, **sol2}
    for name, x in values.items():
        if Fraction(x).denominator != 1:
            raise RepairFailed(f"non-integral solution {x} for {name}")
    law = _law(values)
    by_slot = {}
    for (slot, _), x in values.items():
        if x:
            by_slot[slot] = law.coeff(*slot) - _eps_table(ZEPS, _ADDITIVE).get(slot, ZEps(0, 0))
    return law, by_slot


def placement_of_ambiguous(by_slot: dict):
    """Slots outside the unambiguous list that carry a nonzero value."""
    return {s: v for s, v in sorted(by_slot.items()) if s not in KNOWN}


__all__ = ["RepairFailed", "KNOWN", "AMBIGUOUS", "slots", "repair_multiplicative",
           "placement_of_ambiguous"]
