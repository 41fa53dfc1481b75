"""Scoring toolkit for vision-registered speaker diarization and recognition."""

from .alignment import BACKEND, concat_per_speaker, word_edit_distance
from .assignment import brute_force_assignment, solve_assignment
from .metrics import aggregate_avg, cp_wer, der, ier, iou, sa_wer, si_error, sl_miss_rate, sv_error, wer
from .model import (
    AlignmentResult,
    AttributedTranscript,
    BoundingBox,
    IerBreakdown,
    Registration,
    Segment,
    validate_transcript,
)
from .normalize import NormalizationConfig, normalize
from .records import (
    emit_rttm,
    emit_transcript,
    extract_binary_answer,
    extract_choice,
    parse_bbox,
    parse_registration,
    parse_rttm,
    parse_transcript,
)
from .timeline import attribute, build_timeline

__version__ = "0.1.0"
