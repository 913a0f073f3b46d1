"""Board coordinate system: connector cells, bracket spans, canvas pixels.

The baseboard is a 12-column by 16-row grid of connector cells (192
connectors).  Each cell is 35 mm square on the physical board and 130 px
square on the rendered canvas, so the whole board maps onto a fixed
1560 x 2080 px page.  Cell coordinates are 0-indexed internally; narration
presents them 1-indexed.

A bracket occupies four distinct corner connectors, so the smallest legal
span covers 2 x 2 cells.  Spans are inclusive on all four sides.  The
physical brackets stretch up to the full board width (420 mm); the
simulator places no tighter limit than the board edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotARectangle


@dataclass(frozen=True)
class BoardConstants:
    """Fixed dimensions of the baseboard and its rendered canvas."""

    cols: int = 12
    rows: int = 16
    board_mm: tuple[int, int] = (420, 560)
    canvas_px: tuple[int, int] = (1560, 2080)
    cell_px: int = 130
    cell_mm: int = 35

    def __post_init__(self) -> None:
        if self.canvas_px != (self.cols * self.cell_px, self.rows * self.cell_px):
            raise ValueError("canvas does not tile into cells")
        if self.board_mm != (self.cols * self.cell_mm, self.rows * self.cell_mm):
            raise ValueError("board does not tile into cells")

    @property
    def connector_count(self) -> int:
        return self.cols * self.rows


BOARD = BoardConstants()


@dataclass(frozen=True, order=True)
class CellCoord:
    """One connector cell; row 0 is the top edge, col 0 the left edge."""

    row: int
    col: int

    def __post_init__(self) -> None:
        if not 0 <= self.row < BOARD.rows:
            raise ValueError(f"row {self.row} outside 0..{BOARD.rows - 1}")
        if not 0 <= self.col < BOARD.cols:
            raise ValueError(f"col {self.col} outside 0..{BOARD.cols - 1}")


@dataclass(frozen=True, order=True)
class RectSpan:
    """Inclusive cell rectangle claimed by one bracket."""

    top: int
    left: int
    bottom: int
    right: int

    def __post_init__(self) -> None:
        # top < bottom and left < right: four corners sit on distinct cells,
        # so a span is at least 2 x 2.
        if not 0 <= self.top < self.bottom < BOARD.rows:
            raise ValueError(f"rows {self.top}..{self.bottom} invalid")
        if not 0 <= self.left < self.right < BOARD.cols:
            raise ValueError(f"cols {self.left}..{self.right} invalid")

    @property
    def width_cells(self) -> int:
        return self.right - self.left + 1

    @property
    def height_cells(self) -> int:
        return self.bottom - self.top + 1

    @property
    def area_cells(self) -> int:
        return self.width_cells * self.height_cells

    def corners(self) -> frozenset[CellCoord]:
        return frozenset(
            (
                CellCoord(self.top, self.left),
                CellCoord(self.top, self.right),
                CellCoord(self.bottom, self.left),
                CellCoord(self.bottom, self.right),
            )
        )


@dataclass(frozen=True)
class PixelRect:
    """Canvas-space rectangle; always cell-aligned and inside the canvas."""

    x: int
    y: int
    width: int
    height: int

    def __post_init__(self) -> None:
        for name in ("x", "y", "width", "height"):
            if getattr(self, name) % BOARD.cell_px != 0:
                raise ValueError(f"{name} not a multiple of {BOARD.cell_px}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("empty rectangle")
        if self.x < 0 or self.y < 0:
            raise ValueError("negative origin")
        if self.x + self.width > BOARD.canvas_px[0] or self.y + self.height > BOARD.canvas_px[1]:
            raise ValueError("rectangle leaves the canvas")


def span_to_px(span: RectSpan) -> PixelRect:
    """Map a cell span onto the canvas; every coordinate is a cell multiple."""
    return PixelRect(
        x=span.left * BOARD.cell_px,
        y=span.top * BOARD.cell_px,
        width=span.width_cells * BOARD.cell_px,
        height=span.height_cells * BOARD.cell_px,
    )


def px_to_span(rect: PixelRect) -> RectSpan:
    """Exact inverse of span_to_px for cell-aligned rectangles."""
    p = BOARD.cell_px
    return RectSpan(
        top=rect.y // p,
        left=rect.x // p,
        bottom=rect.y // p + rect.height // p - 1,
        right=rect.x // p + rect.width // p - 1,
    )


def corners_to_span(corners: Iterable[CellCoord]) -> RectSpan:
    """Infer the span whose four corners are exactly the given cells.

    The cells must be {(r1,c1), (r1,c2), (r2,c1), (r2,c2)} with r1 < r2 and
    c1 < c2; anything else raises NotARectangle.
    """
    cells = frozenset(corners)
    if len(cells) != 4:
        raise NotARectangle(f"need 4 distinct cells, got {len(cells)}")
    rows = {c.row for c in cells}
    cols = {c.col for c in cells}
    if len(rows) != 2 or len(cols) != 2:
        raise NotARectangle(f"cells {sorted(cells)} do not span 2 rows x 2 cols")
    r1, r2 = sorted(rows)
    c1, c2 = sorted(cols)
    span = RectSpan(top=r1, left=c1, bottom=r2, right=c2)
    if span.corners() != cells:
        raise NotARectangle(f"cells {sorted(cells)} are not the corners of a rectangle")
    return span
