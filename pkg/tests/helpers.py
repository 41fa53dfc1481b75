import random

from vrsdr_score.model import AttributedTranscript, Registration, Segment


def transcript(*specs):
    """``("A", 0, 10_000, "some words")`` tuples to a transcript."""
    segments = []
    for spk, start, end, *words in specs:
        segments.append(Segment(spk, start, end, tuple(words[0].split()) if words else ()))
    return AttributedTranscript(tuple(segments))


def registration(*labels):
    return Registration(tuple((label, f"desc {label}") for label in labels))


def random_timeline_case(rng: random.Random, horizon=3000, registered=("A", "B", "C")):
    """Random ms-aligned ref/hyp segment lists with overlaps and stray speakers."""
    def segs(labels, n):
        out = []
        for _ in range(n):
            start = rng.randrange(horizon)
            end = min(horizon, start + rng.randrange(0, horizon // 3))
            out.append((rng.choice(labels), start, end))
        return out

    ref = segs(list(registered), rng.randrange(1, 8))
    hyp = segs(list(registered) + ["U1", "U2"], rng.randrange(0, 9))
    return ref, hyp


def to_transcript(segs):
    return AttributedTranscript(tuple(Segment(s, a, b) for s, a, b in segs))
