"""Text normalization: raw content strings to comparable word tokens."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

_APOSTROPHES = {"’": "'", "‘": "'", "ʼ": "'"}
_DIGIT_RUN = re.compile(r"\d+")

_ONES = "zero one two three four five six seven eight nine ten eleven twelve thirteen fourteen fifteen sixteen seventeen eighteen nineteen".split()
_TENS = "_ _ twenty thirty forty fifty sixty seventy eighty ninety".split()
_SCALES = [(10**9, "billion"), (10**6, "million"), (1000, "thousand"), (100, "hundred")]


@dataclass(frozen=True)
class NormalizationConfig:
    lowercase: bool = True
    strip_punctuation: bool = True
    digit_policy: str = "keep"  # keep | spell_out

    def __post_init__(self):
        if self.digit_policy not in ("keep", "spell_out"):
            raise ValueError(f"unknown digit policy {self.digit_policy!r}")


DEFAULT_CONFIG = NormalizationConfig()


def number_to_words(n: int) -> str:
    if n < 20:
        return _ONES[n]
    if n < 100:
        tens, ones = divmod(n, 10)
        return _TENS[tens] + (" " + _ONES[ones] if ones else "")
    for scale, name in _SCALES:
        if n >= scale:
            head, rest = divmod(n, scale)
            words = number_to_words(head) + " " + name
            return words + (" " + number_to_words(rest) if rest else "")
    raise AssertionError("unreachable")


def _spell_digits(match: re.Match) -> str:
    run = match.group(0)
    # leading zeros and very long runs read digit by digit
    if (len(run) > 1 and run[0] == "0") or len(run) > 12:
        return " " + " ".join(_ONES[int(d)] for d in run) + " "
    return " " + number_to_words(int(run)) + " "


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def _strip_punctuation(text: str) -> str:
    out = []
    n = len(text)
    for i, ch in enumerate(text):
        if ch == "'":
            # keep apostrophes only inside words (don't, o'clock)
            if 0 < i < n - 1 and text[i - 1].isalnum() and text[i + 1].isalnum():
                out.append(ch)
            else:
                out.append(" ")
        elif _is_punct(ch):
            out.append(" ")
        else:
            out.append(ch)
    return "".join(out)


def normalize(text: str, cfg: NormalizationConfig = DEFAULT_CONFIG) -> list[str]:
    """Tokenize ``text`` under ``cfg``; never returns empty tokens."""
    text = unicodedata.normalize("NFC", text)
    for src, dst in _APOSTROPHES.items():
        text = text.replace(src, dst)
    if cfg.lowercase:
        text = text.lower()
    if cfg.strip_punctuation:
        text = _strip_punctuation(text)
    if cfg.digit_policy == "spell_out":
        text = _DIGIT_RUN.sub(_spell_digits, text)
    return text.split()
