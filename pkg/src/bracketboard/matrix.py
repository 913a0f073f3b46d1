"""Electrical simulation of the connector sensing matrix.

Each connector cell is a switch in a row/column key-switch matrix.  A
snapped-in bracket corner closes the switch through its identification
resistor; the scanner drives one row at a time and reads each column
through a reference resistor, forming a voltage divider:

    V = (vcc - v_diode) * r_ref / (r_ref + R)
    adc = round(V / vcc * 1023)

WithDiodes mode mirrors hardware with a series diode per switch, which
blocks reverse sneak currents: apparent closures equal actual closures.
WithoutDiodes demonstrates ghosting: current can wander row->col->row
through other closed switches, so every (row, col) pair inside a connected
component of the closure graph reads as closed.  A phantom cell reads the
resistance of a deterministic true closure in its component (the one with
the smallest row, then col).

Readings carry multiplicative uniform noise of +/-2.5 percent on the
resistance, drawn from a single seeded PRNG stream per simulator, one draw
per reading in row-major scan order.  Two simulators with equal seeds and
equal event histories therefore emit identical frame sequences.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .errors import OutOfRange
from .geometry import CellCoord


@dataclass(frozen=True)
class ElectricalConstants:
    """Supply, ADC, diode and reference values assumed by the sensing model."""

    vcc: float = 5.0
    adc_bits: int = 10
    v_diode: float = 0.7  # silicon rectifier forward drop
    r_ref: float = 1000.0  # per-column reference resistor
    noise: float = 0.025  # +/-2.5% multiplicative on R
    r_min: float = 180.0  # sensable resistance range
    r_max: float = 5500.0

    @property
    def adc_max(self) -> int:
        return (1 << self.adc_bits) - 1


ELECTRICAL = ElectricalConstants()

CONSTANTS_VERSION = "1"  # bump when any electrical or board constant changes


class DiodeMode(Enum):
    WITH_DIODES = "with_diodes"
    WITHOUT_DIODES = "without_diodes"


@dataclass(frozen=True)
class ScanFrame:
    """One full sweep of the matrix: tick counter plus ADC count per apparent closure.

    Readings are keyed by cell in row-major scan order.
    """

    tick: int
    readings: dict[CellCoord, int] = field(default_factory=dict)


def _components(closed: set[CellCoord]) -> list[tuple[set[int], set[int], list[CellCoord]]]:
    """Connected components of the bipartite row/col graph induced by closures."""
    row_cols: dict[int, set[int]] = {}
    col_rows: dict[int, set[int]] = {}
    for cell in closed:
        row_cols.setdefault(cell.row, set()).add(cell.col)
        col_rows.setdefault(cell.col, set()).add(cell.row)

    seen_rows: set[int] = set()
    components = []
    for start in sorted(row_cols):
        if start in seen_rows:
            continue
        rows, cols = set(), set()
        frontier = [("r", start)]
        while frontier:
            kind, idx = frontier.pop()
            if kind == "r":
                if idx in rows:
                    continue
                rows.add(idx)
                frontier.extend(("c", c) for c in row_cols[idx])
            else:
                if idx in cols:
                    continue
                cols.add(idx)
                frontier.extend(("r", r) for r in col_rows[idx])
        seen_rows |= rows
        members = sorted(c for c in closed if c.row in rows)
        components.append((rows, cols, members))
    return components


def ghost_sources(closed: set[CellCoord]) -> dict[CellCoord, CellCoord]:
    """Map every apparent closure (diode-less) to the closure whose resistance it reads.

    True closures read themselves; phantoms read the component representative
    (smallest row, then col).
    """
    sources: dict[CellCoord, CellCoord] = {}
    for rows, cols, members in _components(closed):
        representative = members[0]
        for r in rows:
            for c in cols:
                cell = CellCoord(r, c)
                sources[cell] = cell if cell in closed else representative
    return sources


def apparent_closures(closed: set[CellCoord], mode: DiodeMode) -> set[CellCoord]:
    """Cells the scanner reports as closed for a given set of actual closures."""
    if mode is DiodeMode.WITH_DIODES:
        return set(closed)
    return set(ghost_sources(closed))


class MatrixSimulator:
    """Stateful switch matrix with a seeded noise stream and a tick counter.

    The simulator is tick-driven; the 20 Hz cadence of the live device is
    supplied by the session layer, not modelled here.
    """

    def __init__(
        self,
        seed: int = 0,
        mode: DiodeMode = DiodeMode.WITH_DIODES,
        constants: ElectricalConstants = ELECTRICAL,
    ):
        self.constants = constants
        self.mode = mode
        self._switches: dict[CellCoord, float] = {}
        self._rng = random.Random(seed)
        self._tick = 0

    @property
    def tick(self) -> int:
        return self._tick

    def switches(self) -> dict[CellCoord, float]:
        return dict(self._switches)

    def set_switch(self, cell: CellCoord, resistance_ohms: float, closed: bool) -> None:
        """Close a switch through the given resistance, or open it.

        Closing with a resistance outside the sensable range raises OutOfRange
        and leaves the matrix untouched.
        """
        if closed:
            c = self.constants
            if not c.r_min <= resistance_ohms <= c.r_max:
                raise OutOfRange(
                    f"{resistance_ohms} ohm outside sensable range "
                    f"[{c.r_min:g}, {c.r_max:g}]"
                )
            self._switches[cell] = float(resistance_ohms)
        else:
            self._switches.pop(cell, None)

    def set_mode(self, mode: DiodeMode) -> None:
        self.mode = mode

    def set_seed(self, seed: int) -> None:
        """Restart the noise stream from a fresh seed."""
        self._rng = random.Random(seed)

    def divider_adc(self, resistance_ohms: float, noisy: bool = False) -> int:
        """ADC count for one reading of the given resistance.

        A noisy reading consumes one draw from the simulator's noise stream.
        """
        c = self.constants
        if not c.r_min <= resistance_ohms <= c.r_max:
            raise OutOfRange(f"{resistance_ohms} ohm outside sensable range")
        r = resistance_ohms
        if noisy:
            r *= self._rng.uniform(1.0 - c.noise, 1.0 + c.noise)
        v = (c.vcc - c.v_diode) * c.r_ref / (c.r_ref + r)
        adc = round(v / c.vcc * c.adc_max)
        return max(0, min(c.adc_max, adc))

    def scan_frame(self) -> ScanFrame:
        """Sweep rows 0..15 in order and read every apparent closure."""
        self._tick += 1
        closed = set(self._switches)
        if self.mode is DiodeMode.WITH_DIODES:
            sources = {cell: cell for cell in closed}
        else:
            sources = ghost_sources(closed)
        readings: dict[CellCoord, int] = {}
        for cell in sorted(sources):  # (row, col) order == row-major scan
            readings[cell] = self.divider_adc(self._switches[sources[cell]], noisy=True)
        return ScanFrame(tick=self._tick, readings=readings)
