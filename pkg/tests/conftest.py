"""Shared helpers for driving the tracker and engine in tests."""

from __future__ import annotations

import random

import pytest

from bracketboard import BracketType, CellCoord, Contact, ContactSet


def contact_set(tick: int, cells: dict[tuple[int, int], BracketType]) -> ContactSet:
    """Build a ContactSet from {(row, col): type} with nominal resistances."""
    contacts = tuple(
        Contact(CellCoord(r, c), btype, btype.nominal_ohms)
        for (r, c), btype in sorted(cells.items())
    )
    return ContactSet(tick=tick, contacts=contacts)


class TrackerDriver:
    """Feed a tracker one mutable contact map, one tick per step."""

    def __init__(self, tracker):
        self.tracker = tracker
        self.cells: dict[tuple[int, int], BracketType] = {}
        self.tick = 0
        self.events = []

    def step(self, n: int = 1):
        new = []
        for _ in range(n):
            self.tick += 1
            evs = self.tracker.ingest(contact_set(self.tick, self.cells))
            new.extend(evs)
        self.events.extend(new)
        return new

    def touch(self, cells, btype: BracketType):
        for rc in cells:
            self.cells[rc] = btype

    def lift(self, cells):
        for rc in cells:
            self.cells.pop(rc, None)


@pytest.fixture
def driver():
    from bracketboard import BracketTracker

    return TrackerDriver(BracketTracker())


def _corner_cells(span: tuple[int, int, int, int]) -> list[tuple[int, int]]:
    top, left, bottom, right = span
    return [(top, left), (top, right), (bottom, left), (bottom, right)]


def _try_random_placement(rng: random.Random, drv: TrackerDriver, live: list) -> bool:
    for _ in range(200):
        top = rng.randrange(15)
        bottom = rng.randrange(top + 1, 16)
        left = rng.randrange(11)
        right = rng.randrange(left + 1, 12)
        btype = rng.choice(list(BracketType))
        corners = _corner_cells((top, left, bottom, right))
        if any(rc in drv.cells for rc in corners):
            continue
        # Same-type spans sharing a row pair or a column pair admit cross
        # rectangles, which would make the final grouping ambiguous and the
        # brute-force oracle unusable.  Reject those layouts up front.
        if any(
            other is btype
            and ({top, bottom} == {sp[0], sp[2]} or {left, right} == {sp[1], sp[3]})
            for other, sp in live
        ):
            continue
        rng.shuffle(corners)
        if rng.random() < 0.5:
            drv.touch(corners, btype)
        else:
            for rc in corners:
                drv.touch([rc], btype)
                drv.step()
        drv.step(3)
        live.append((btype, (top, left, bottom, right)))
        return True
    return False


def _random_removal(rng: random.Random, drv: TrackerDriver, live: list) -> None:
    btype, span = live.pop(rng.randrange(len(live)))
    drv.lift(_corner_cells(span))
    drv.step(3)


def random_lifecycle(seed: int) -> TrackerDriver:
    """Drive a fresh tracker through a random place/remove history.

    Every operation settles before the next starts and same-type spans are
    kept grouping-unambiguous, so the final tracker state must agree with
    brute_force_group over the final contact picture.
    """
    from bracketboard import BracketTracker

    rng = random.Random(seed)
    drv = TrackerDriver(BracketTracker())
    live: list[tuple[BracketType, tuple[int, int, int, int]]] = []
    for _ in range(rng.randint(2, 6)):
        removing = live and (len(live) >= 4 or rng.random() < 0.3)
        if removing or not _try_random_placement(rng, drv, live):
            if live:
                _random_removal(rng, drv, live)
    drv.step(3)
    return drv
