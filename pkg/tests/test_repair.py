from collections import Counter

import pytest

from ftlcalc import repair
from ftlcalc.ftl import multiplicative_ftl
from ftlcalc.repair import AMBIGUOUS, KNOWN, RepairFailed, placement_of_ambiguous


def test_repair_reproduces_frozen_table(repaired):
    law, _ = repaired
    assert law == multiplicative_ftl()


def test_known_entries_are_kept(repaired):
    _, by_slot = repaired
    for slot, value in KNOWN.items():
        assert by_slot[slot] == value


def test_ambiguous_values_each_land_once(repaired):
    _, by_slot = repaired
    placed = placement_of_ambiguous(by_slot)
    assert Counter(map(str, placed.values())) == Counter(map(str, AMBIGUOUS))


def test_ambiguous_placement(repaired):
    _, by_slot = repaired
    placed = placement_of_ambiguous(by_slot)
    assert placed == {
        (2, 2, 2, 0): repair.G,
        (3, 2, 2, 0): repair.TG * -2,
        (3, 3, 1, 1): repair.G,
    }


def test_solution_is_integral(repaired):
    law, _ = repaired
    for c in law.table.values():
        for part in (c.even, c.odd):
            for v in part.values():
                assert all(int(x) == x for x in (getattr(v, "a", v), getattr(v, "b", 0)))


def test_slots_cover_filtration():
    for f in (1, 2):
        for (l, i, j, k) in repair.slots(f):
            assert i >= j >= k >= 0 and i + j + k - l == f


def test_wrong_known_entry_is_rejected(monkeypatch):
    bad = dict(KNOWN)
    bad[(2, 2, 1, 0)] = repair.TG * 5
    monkeypatch.setattr(repair, "KNOWN", bad)
    with pytest.raises(RepairFailed):
        repair._solve_filtration({}, 1)
