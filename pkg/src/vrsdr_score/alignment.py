"""Word-level minimum-edit alignment.

The DP runs in a compiled kernel when ``_align_ext`` was built, otherwise
in the pure-Python ``_align_py``. Set ``VRSDR_SCORE_PURE_PYTHON=1`` to
force the fallback. ``BACKEND`` names the kernel in use.
"""

from __future__ import annotations

import os
from array import array
from typing import Sequence

from . import _align_py
from .model import AlignmentResult, AttributedTranscript

if os.environ.get("VRSDR_SCORE_PURE_PYTHON"):
    _kernel = _align_py
else:
    try:
        from . import _align_ext as _kernel
    except ImportError:
        _kernel = _align_py

BACKEND = "cython" if _kernel is not _align_py else "python"


def _encode(ref: Sequence[str], hyp: Sequence[str]) -> tuple[array, array]:
    ids: dict[str, int] = {}
    r = array("i", [ids.setdefault(tok, len(ids)) for tok in ref])
    h = array("i", [ids.setdefault(tok, len(ids)) for tok in hyp])
    return r, h


def word_edit_distance(ref: Sequence[str], hyp: Sequence[str]) -> AlignmentResult:
    """Align two token sequences with unit S/D/I costs."""
    if not ref:
        return AlignmentResult(0, 0, len(hyp), 0)
    if not hyp:
        return AlignmentResult(0, len(ref), 0, 0)
    sub, dele, ins, cor = _kernel.edit_counts(*_encode(ref, hyp))
    return AlignmentResult(sub, dele, ins, cor)


def edit_distance(ref: Sequence[str], hyp: Sequence[str]) -> int:
    """Distance only; uses the two-row DP."""
    if not ref or not hyp:
        return len(ref) + len(hyp)
    return _kernel.edit_distance(*_encode(ref, hyp))


def concat_per_speaker(t: AttributedTranscript, speaker: str) -> list[str]:
    """All tokens spoken by ``speaker``, in transcript order."""
    tokens: list[str] = []
    for seg in t.segments:
        if seg.speaker == speaker:
            tokens.extend(seg.tokens)
    return tokens
