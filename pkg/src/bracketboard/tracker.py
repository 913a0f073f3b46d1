"""Bracket lifecycle tracking over a stream of debounced corner contacts.

The tracker turns per-scan ContactSets into a stable set of placed brackets
plus a stream of layout events.  Rules, in the order they run each tick:

* Debounce: a per-cell change (contact appearing, vanishing, or changing
  type) is accepted only after ``debounce_scans`` consecutive identical
  observations.  Measured resistance may jitter freely; identity is
  presence + type.

* Support: a live bracket is held down by the corners of its span that
  carry a matching-type contact.  Losing all four corners removes the
  bracket immediately.  Losing one to three moves a Placed bracket to
  Adjusting and starts the grace countdown.

* Re-formation: an Adjusting or Misaligned-pending bracket reclaims a
  rectangle built from all of its surviving corners plus pending contacts
  of its type.  Same span again: silent recovery.  New span: BracketResized
  (BracketMoved if the new corner cells share nothing with the old ones).
  After a misalignment warning the recovery is announced as BracketPlaced.

* Placement: per type, unassigned contacts form a pending pool; whenever a
  4-subset of a pool forms a rectangle a bracket is Placed.  If several
  4-subsets qualify the winner is the one whose latest-arriving corner is
  earliest, then the smaller area, then the lexicographically smallest
  top-left.

* Misalignment: if a type's candidate contacts (pool plus surviving corners
  of its non-Placed brackets) number at least four with no rectangular
  4-subset for ``misalign_scans``, a MisalignmentWarning lists the cells in
  arrival order.  Involved brackets become Misaligned-pending and are
  exempt from grace until the situation changes.  The window restarts when
  the stuck set changes, so each arrangement warns once.

* Grace expiry: an Adjusting bracket still partial after ``grace_scans``
  (and whose type has no open misalignment window) is removed, with a
  PartialPlacement event naming the survivors.

Ticks must be strictly increasing; anything else raises ProtocolError.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator

from .decode import BracketType, ContactSet
from .errors import AmbiguousGrouping, ProtocolError
from .geometry import CellCoord, RectSpan


@dataclass(frozen=True)
class TrackerConfig:
    debounce_scans: int = 2
    grace_scans: int = 40  # ~2 s at the 20 Hz scan cadence
    misalign_scans: int = 40


class BracketState(Enum):
    PLACED = "placed"
    ADJUSTING = "adjusting"
    MISALIGNED_PENDING = "misaligned_pending"


class LayoutEventKind(Enum):
    BRACKET_PLACED = "bracket_placed"
    BRACKET_RESIZED = "bracket_resized"
    BRACKET_MOVED = "bracket_moved"
    BRACKET_REMOVED = "bracket_removed"
    MISALIGNMENT_WARNING = "misalignment_warning"
    PARTIAL_PLACEMENT = "partial_placement"


@dataclass(frozen=True)
class LayoutEvent:
    """One observable change; payload fields depend on the kind.

    Placed/Resized/Moved carry the current span (plus old_span for
    Resized/Moved); Removed carries the last span.  Warning and Partial
    carry the offending/surviving cells in arrival order (latest last).
    """

    kind: LayoutEventKind
    tick: int
    bracket_id: int | None = None
    bracket_type: BracketType | None = None
    span: RectSpan | None = None
    old_span: RectSpan | None = None
    cells: tuple[CellCoord, ...] = ()


@dataclass(frozen=True)
class PlacedBracket:
    id: int
    type: BracketType
    span: RectSpan
    placed_tick: int


@dataclass(frozen=True)
class LayoutSnapshot:
    """Immutable copy of all Placed brackets, ordered by id."""

    tick: int
    brackets: tuple[PlacedBracket, ...] = ()


@dataclass(frozen=True)
class TrackerAnomaly:
    tick: int
    cell: CellCoord
    reason: str
    detail: str


@dataclass
class _Cell:
    """Debounce bookkeeping for one connector cell."""

    stable: BracketType | None = None
    ohms: float = 0.0
    accepted_tick: int = 0
    candidate: BracketType | None = None
    candidate_count: int = 0


@dataclass
class _Bracket:
    id: int
    type: BracketType
    span: RectSpan
    state: BracketState
    placed_tick: int
    last_change_tick: int
    grace_deadline: int | None = None


@dataclass
class _Window:
    """Misalignment window for one type's stuck candidate set."""

    cells: frozenset[CellCoord] = frozenset()
    start_tick: int = 0
    warned: bool = False
    open: bool = False


def _rect_subsets(cells: Iterable[CellCoord]) -> Iterator[RectSpan]:
    """Every span whose four corners all lie in ``cells``.

    Enumerates row pairs and their shared columns instead of raw 4-subsets,
    which keeps even a fully closed board cheap.
    """
    by_row: dict[int, set[int]] = {}
    for cell in cells:
        by_row.setdefault(cell.row, set()).add(cell.col)
    rows = sorted(by_row)
    for r1, r2 in combinations(rows, 2):
        shared = sorted(by_row[r1] & by_row[r2])
        for c1, c2 in combinations(shared, 2):
            yield RectSpan(top=r1, left=c1, bottom=r2, right=c2)


def _verb_for_reform(old: RectSpan, new: RectSpan) -> LayoutEventKind:
    """Resized when old and new spans share a corner cell, Moved otherwise."""
    if old.corners() & new.corners():
        return LayoutEventKind.BRACKET_RESIZED
    return LayoutEventKind.BRACKET_MOVED


class BracketTracker:
    def __init__(self, config: TrackerConfig = TrackerConfig()):
        self.config = config
        self._tick: int | None = None
        self._cells: dict[CellCoord, _Cell] = {}
        self._brackets: dict[int, _Bracket] = {}
        self._next_id = 1
        self._windows: dict[BracketType, _Window] = {t: _Window() for t in BracketType}
        self._quarantine: dict[CellCoord, int] = {}  # cell -> bracket id it displaced
        self._anomalies: list[TrackerAnomaly] = []

    # ------------------------------------------------------------------ API

    def ingest(self, contacts: ContactSet) -> list[LayoutEvent]:
        """Advance one scan tick; returns the layout events it produced."""
        tick = contacts.tick
        if self._tick is not None and tick <= self._tick:
            raise ProtocolError(f"tick {tick} not after {self._tick}")
        self._tick = tick

        self._debounce(contacts, tick)
        self._prune_quarantine()

        events: list[LayoutEvent] = []
        self._update_support(tick, events)
        self._reform(tick, events)
        self._place_new(tick, events)
        self._check_misalignment(tick, events)
        self._expire_grace(tick, events)
        return events

    def snapshot(self) -> LayoutSnapshot:
        placed = tuple(
            PlacedBracket(b.id, b.type, b.span, b.placed_tick)
            for b in sorted(self._brackets.values(), key=lambda b: b.id)
            if b.state is BracketState.PLACED
        )
        return LayoutSnapshot(tick=self._tick or 0, brackets=placed)

    def take_anomalies(self) -> list[TrackerAnomaly]:
        out, self._anomalies = self._anomalies, []
        return out

    # ------------------------------------------------------------- debounce

    def _debounce(self, contacts: ContactSet, tick: int) -> None:
        observed = {c.cell: c for c in contacts.contacts}
        for cell in set(self._cells) | set(observed):
            state = self._cells.setdefault(cell, _Cell())
            contact = observed.get(cell)
            target = contact.type if contact else None
            if target == state.stable:
                state.candidate = None
                state.candidate_count = 0
                if contact is not None:
                    state.ohms = contact.measured_ohms
            elif target == state.candidate and state.candidate_count > 0:
                state.candidate_count += 1
                if state.candidate_count >= self.config.debounce_scans:
                    self._commit(cell, state, target, contact, tick)
            else:
                state.candidate = target
                state.candidate_count = 1
                if state.candidate_count >= self.config.debounce_scans:
                    self._commit(cell, state, target, contact, tick)
        # drop empty bookkeeping so the map stays small
        for cell in [c for c, s in self._cells.items() if s.stable is None and s.candidate_count == 0]:
            del self._cells[cell]

    def _commit(self, cell, state, target, contact, tick) -> None:
        if target is not None:
            for b in self._brackets.values():
                if (
                    b.state is BracketState.PLACED
                    and b.type is not target
                    and cell in b.span.corners()
                    and self._supported(b, before=cell)
                ):
                    self._anomalies.append(
                        TrackerAnomaly(
                            tick,
                            cell,
                            "displaced_corner",
                            f"{target.value} contact landed on a corner of "
                            f"{b.type.value} bracket {b.id}",
                        )
                    )
                    self._quarantine[cell] = b.id
        state.stable = target
        state.ohms = contact.measured_ohms if contact else 0.0
        state.accepted_tick = tick
        state.candidate = None
        state.candidate_count = 0

    def _supported(self, b: _Bracket, before: CellCoord) -> bool:
        # was the given corner cell still matching this bracket before commit?
        s = self._cells.get(before)
        return s is not None and s.stable is b.type

    def _prune_quarantine(self) -> None:
        for cell in list(self._quarantine):
            bid = self._quarantine[cell]
            b = self._brackets.get(bid)
            s = self._cells.get(cell)
            if (
                b is None
                or cell not in b.span.corners()
                or s is None
                or s.stable is None
                or s.stable is b.type
            ):
                del self._quarantine[cell]

    # ------------------------------------------------------------- lifecycle

    def _down_corners(self, b: _Bracket) -> frozenset[CellCoord]:
        return frozenset(
            c
            for c in b.span.corners()
            if (s := self._cells.get(c)) is not None and s.stable is b.type
        )

    def _pool(self, btype: BracketType) -> dict[CellCoord, int]:
        """Unassigned stable contacts of a type, cell -> arrival tick."""
        supporting: set[CellCoord] = set()
        for b in self._brackets.values():
            if b.type is btype:
                supporting |= self._down_corners(b)
        return {
            cell: s.accepted_tick
            for cell, s in self._cells.items()
            if s.stable is btype and cell not in supporting and cell not in self._quarantine
        }

    def _update_support(self, tick: int, events: list[LayoutEvent]) -> None:
        for bid in sorted(self._brackets):
            b = self._brackets[bid]
            down = self._down_corners(b)
            if not down:
                events.append(
                    LayoutEvent(
                        LayoutEventKind.BRACKET_REMOVED,
                        tick,
                        bracket_id=b.id,
                        bracket_type=b.type,
                        span=b.span,
                    )
                )
                del self._brackets[bid]
            elif b.state is BracketState.PLACED and len(down) < 4:
                b.state = BracketState.ADJUSTING
                b.grace_deadline = tick + self.config.grace_scans
                b.last_change_tick = tick

    def _best_rectangle(
        self,
        candidates: dict[CellCoord, int],
        required: frozenset[CellCoord] = frozenset(),
    ) -> RectSpan | None:
        best: RectSpan | None = None
        best_key = None
        for span in _rect_subsets(candidates):
            corners = span.corners()
            if not required <= corners:
                continue
            key = (
                max(candidates[c] for c in corners),  # latest-arriving corner earliest
                span.area_cells,
                (span.top, span.left),
            )
            if best_key is None or key < best_key:
                best, best_key = span, key
        return best

    def _reform(self, tick: int, events: list[LayoutEvent]) -> None:
        for bid in sorted(self._brackets):
            b = self._brackets[bid]
            if b.state is BracketState.PLACED:
                continue
            down = self._down_corners(b)
            candidates = dict(self._pool(b.type))
            for cell in down:
                candidates[cell] = self._cells[cell].accepted_tick
            span = self._best_rectangle(candidates, required=down)
            if span is None:
                continue
            was_misaligned = b.state is BracketState.MISALIGNED_PENDING
            old = b.span
            b.span = span
            b.state = BracketState.PLACED
            b.grace_deadline = None
            b.last_change_tick = tick
            if was_misaligned:
                events.append(
                    LayoutEvent(
                        LayoutEventKind.BRACKET_PLACED,
                        tick,
                        bracket_id=b.id,
                        bracket_type=b.type,
                        span=span,
                    )
                )
            elif span != old:
                events.append(
                    LayoutEvent(
                        _verb_for_reform(old, span),
                        tick,
                        bracket_id=b.id,
                        bracket_type=b.type,
                        span=span,
                        old_span=old,
                    )
                )
            # same span from Adjusting: silent recovery, nothing changed

    def _place_new(self, tick: int, events: list[LayoutEvent]) -> None:
        for btype in BracketType:
            while True:
                pool = self._pool(btype)
                span = self._best_rectangle(pool)
                if span is None:
                    break
                b = _Bracket(
                    id=self._next_id,
                    type=btype,
                    span=span,
                    state=BracketState.PLACED,
                    placed_tick=tick,
                    last_change_tick=tick,
                )
                self._next_id += 1
                self._brackets[b.id] = b
                events.append(
                    LayoutEvent(
                        LayoutEventKind.BRACKET_PLACED,
                        tick,
                        bracket_id=b.id,
                        bracket_type=b.type,
                        span=span,
                    )
                )

    def _check_misalignment(self, tick: int, events: list[LayoutEvent]) -> None:
        for btype in BracketType:
            window = self._windows[btype]
            candidates = dict(self._pool(btype))
            involved: list[_Bracket] = []
            for b in self._brackets.values():
                if b.type is btype and b.state is not BracketState.PLACED:
                    involved.append(b)
                    for cell in self._down_corners(b):
                        candidates[cell] = self._cells[cell].accepted_tick
            stuck = len(candidates) >= 4 and next(_rect_subsets(candidates), None) is None
            if not stuck:
                window.cells = frozenset()
                window.open = False
                window.warned = False
                # a warned bracket whose stuck set dissolved rejoins the grace regime
                for b in involved:
                    if b.state is BracketState.MISALIGNED_PENDING:
                        b.state = BracketState.ADJUSTING
                        b.grace_deadline = tick + self.config.grace_scans
                continue
            cellset = frozenset(candidates)
            if cellset != window.cells:
                window.cells = cellset
                window.start_tick = tick
                window.warned = False
            window.open = True
            if not window.warned and tick - window.start_tick >= self.config.misalign_scans:
                window.warned = True
                ordered = tuple(
                    sorted(candidates, key=lambda c: (candidates[c], c.row, c.col))
                )
                events.append(
                    LayoutEvent(
                        LayoutEventKind.MISALIGNMENT_WARNING,
                        tick,
                        bracket_type=btype,
                        cells=ordered,
                    )
                )
                for b in involved:
                    b.state = BracketState.MISALIGNED_PENDING
                    b.grace_deadline = None

    def _expire_grace(self, tick: int, events: list[LayoutEvent]) -> None:
        for bid in sorted(self._brackets):
            b = self._brackets[bid]
            if b.state is not BracketState.ADJUSTING or b.grace_deadline is None:
                continue
            if self._windows[b.type].open:
                continue  # warning flow owns this bracket for now
            if tick >= b.grace_deadline:
                down = self._down_corners(b)
                survivors = tuple(
                    sorted(down, key=lambda c: (self._cells[c].accepted_tick, c.row, c.col))
                )
                events.append(
                    LayoutEvent(
                        LayoutEventKind.BRACKET_REMOVED,
                        tick,
                        bracket_id=b.id,
                        bracket_type=b.type,
                        span=b.span,
                    )
                )
                events.append(
                    LayoutEvent(
                        LayoutEventKind.PARTIAL_PLACEMENT,
                        tick,
                        bracket_type=b.type,
                        cells=survivors,
                    )
                )
                del self._brackets[bid]


# ---------------------------------------------------------------- oracles


def brute_force_group(contacts: ContactSet) -> set[tuple[BracketType, RectSpan]]:
    """Reference grouping: unique maximal partition of contacts into rectangles.

    Enumerates, per type, every collection of pairwise-disjoint rectangular
    4-subsets and keeps the largest.  Raises AmbiguousGrouping when two
    different collections tie for the maximum.  Intended for small inputs
    (at most 16 contacts).
    """
    if len(contacts.contacts) > 16:
        raise ValueError("oracle accepts at most 16 contacts")
    result: set[tuple[BracketType, RectSpan]] = set()
    for btype in BracketType:
        cells = [c.cell for c in contacts.contacts if c.type is btype]
        rects = [(span, span.corners()) for span in _rect_subsets(cells)]
        best_size = 0
        best_sets: set[frozenset[RectSpan]] = {frozenset()}

        def search(i: int, used: frozenset[CellCoord], chosen: frozenset[RectSpan]) -> None:
            nonlocal best_size, best_sets
            if len(chosen) > best_size:
                best_size = len(chosen)
                best_sets = {chosen}
            elif len(chosen) == best_size:
                best_sets.add(chosen)
            for j in range(i, len(rects)):
                span, corners = rects[j]
                if not corners & used:
                    search(j + 1, used | corners, chosen | {span})

        search(0, frozenset(), frozenset())
        if len(best_sets) > 1:
            raise AmbiguousGrouping(
                f"{btype.value}: {len(best_sets)} maximal groupings of size {best_size}"
            )
        result |= {(btype, span) for span in next(iter(best_sets))}
    return result


def replay_layout_events(events: Iterable[LayoutEvent]) -> dict[int, tuple[BracketType, RectSpan]]:
    """Reconstruct the placed-bracket map implied by an event stream."""
    placed: dict[int, tuple[BracketType, RectSpan]] = {}
    for e in events:
        if e.kind in (
            LayoutEventKind.BRACKET_PLACED,
            LayoutEventKind.BRACKET_RESIZED,
            LayoutEventKind.BRACKET_MOVED,
        ):
            assert e.bracket_id is not None and e.bracket_type is not None and e.span is not None
            placed[e.bracket_id] = (e.bracket_type, e.span)
        elif e.kind is LayoutEventKind.BRACKET_REMOVED:
            assert e.bracket_id is not None
            placed.pop(e.bracket_id, None)
    return placed
