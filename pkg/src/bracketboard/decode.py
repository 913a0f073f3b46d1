"""Turn raw scan frames into typed corner contacts.

Bracket types are identified by the resistor embedded in each corner.  The
three values are spread far enough apart (roughly one decade end to end,
standard E12 values) that a +/-10 percent classification band per type
absorbs both the 2.5 percent resistor noise and ADC quantization with wide
margin.  A reading whose recovered resistance misses every band is Unknown:
a diagnostic anomaly, not an error, and never a contact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import SaturatedReading
from .geometry import CellCoord
from .matrix import ELECTRICAL, ElectricalConstants, ScanFrame


class BracketType(Enum):
    TEXT = "text"
    IMAGE = "image"
    VIDEO = "video"

    @property
    def nominal_ohms(self) -> float:
        return _NOMINAL_OHMS[self]

    @property
    def display_name(self) -> str:
        return self.value.capitalize()


_NOMINAL_OHMS = {
    BracketType.TEXT: 330.0,
    BracketType.IMAGE: 1000.0,
    BracketType.VIDEO: 3300.0,
}

CLASSIFY_TOLERANCE = 0.10


def adc_to_resistance(adc: int, constants: ElectricalConstants = ELECTRICAL) -> float:
    """Invert the divider: recover the switch resistance from an ADC count.

    Counts at the rails (0 or full scale) raise SaturatedReading.  The
    result is clamped at 0 since negative resistance is meaningless.
    """
    if not 0 <= adc <= constants.adc_max:
        raise ValueError(f"{adc} is not a {constants.adc_bits}-bit ADC count")
    if adc in (0, constants.adc_max):
        raise SaturatedReading(f"ADC {adc} is at the rail")
    r = constants.r_ref * (
        (constants.vcc - constants.v_diode) * constants.adc_max / (constants.vcc * adc) - 1.0
    )
    return max(r, 0.0)


def classify(ohms: float) -> BracketType | None:
    """Bracket type whose +/-10% band contains the resistance, else None (Unknown)."""
    for btype, nominal in _NOMINAL_OHMS.items():
        if abs(ohms - nominal) <= CLASSIFY_TOLERANCE * nominal:
            return btype
    return None


@dataclass(frozen=True)
class Contact:
    """One classified corner contact; at most one per cell."""

    cell: CellCoord
    type: BracketType
    measured_ohms: float


@dataclass(frozen=True)
class DecodeAnomaly:
    """A reading that produced no contact; kept for diagnostics."""

    cell: CellCoord
    adc: int
    measured_ohms: float | None
    reason: str


@dataclass(frozen=True)
class ContactSet:
    """All contacts decoded from one frame, in row-major cell order."""

    tick: int
    contacts: tuple[Contact, ...] = ()
    anomalies: tuple[DecodeAnomaly, ...] = ()

    def by_cell(self) -> dict[CellCoord, Contact]:
        return {c.cell: c for c in self.contacts}


def decode_frame(frame: ScanFrame, constants: ElectricalConstants = ELECTRICAL) -> ContactSet:
    """Decode every reading of a frame; stateless, so equal frames decode equally."""
    contacts: list[Contact] = []
    anomalies: list[DecodeAnomaly] = []
    for cell, adc in frame.readings.items():
        try:
            ohms = adc_to_resistance(adc, constants)
        except SaturatedReading:
            anomalies.append(DecodeAnomaly(cell, adc, None, "saturated"))
            continue
        btype = classify(ohms)
        if btype is None:
            anomalies.append(DecodeAnomaly(cell, adc, ohms, "unclassified"))
        else:
            contacts.append(Contact(cell, btype, ohms))
    return ContactSet(tick=frame.tick, contacts=tuple(contacts), anomalies=tuple(anomalies))
