"""Software twin of a bracket-sensing layout board.

Physical brackets snapped onto a connector grid become web page elements:
the matrix scanner senses resistor-coded corners, the decoder classifies
them, the tracker maintains bracket lifecycles, and every change is
narrated for screen-reader use and rendered to a deterministic HTML page.
"""

from .decode import (
    BracketType,
    Contact,
    ContactSet,
    DecodeAnomaly,
    adc_to_resistance,
    classify,
    decode_frame,
)
from .engine import Engine
from .errors import (
    AmbiguousGrouping,
    BoardError,
    NotARectangle,
    OutOfRange,
    ProtocolError,
    SaturatedReading,
    TraceError,
)
from .geometry import (
    BOARD,
    BoardConstants,
    CellCoord,
    PixelRect,
    RectSpan,
    corners_to_span,
    px_to_span,
    span_to_px,
)
from .matrix import (
    CONSTANTS_VERSION,
    ELECTRICAL,
    DiodeMode,
    ElectricalConstants,
    MatrixSimulator,
    ScanFrame,
    apparent_closures,
    ghost_sources,
)
from .narrate import (
    WORDS_PER_MINUTE,
    ButtonKind,
    Utterance,
    describe_bracket,
    handle_button,
    misalignment_utterance,
    narrate_event,
    partial_placement_utterance,
)
from .render import layout_dict, layout_json, render
from .replay import ReplayResult, replay_file, replay_text, settle_scans
from .service import BoardService
from .tracker import (
    BracketState,
    BracketTracker,
    LayoutEvent,
    LayoutEventKind,
    LayoutSnapshot,
    PlacedBracket,
    TrackerAnomaly,
    TrackerConfig,
    brute_force_group,
    replay_layout_events,
)

__version__ = "0.1.0"
