"""Piecewise-constant drive programs for a single qubit.

A :class:`PulseSequence` is an ordered list of :class:`PulseSegment` objects, each
holding a constant signed drive strength ``omega`` (the coefficient of ``sigma_z/2``)
applied for ``duration``. Time and frequency are dimensionless; CORPSE-family
sequences use the nominal strength ``|omega| = 1``.

Sequences are serialized as JSON documents::

    {"label": "short-corpse(pi)",
     "segments": [{"omega": -1.0, "duration": 1.047...}, ...]}
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "DomainError",
    "SequenceFormatError",
    "ValidationError",
    "PulseSegment",
    "PulseSequence",
    "RotationTarget",
    "normalize",
    "total_rotation_angle",
    "emit_sequence",
    "parse_sequence",
]


class ValidationError(ValueError):
    """Raised when a segment or sequence violates its invariants."""


class SequenceFormatError(ValueError):
    """Raised when a sequence document is malformed."""


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class PulseSegment:
    """Constant drive ``omega`` held for ``duration``."""

    omega: float
    duration: float

    def __post_init__(self):
        omega, duration = float(self.omega), float(self.duration)
        if not math.isfinite(omega):
            raise ValidationError(f"omega must be finite, got {self.omega!r}")
        if not math.isfinite(duration):
            raise ValidationError(f"duration must be finite, got {self.duration!r}")
        if duration < 0:
            raise ValidationError(f"duration must be non-negative, got {duration!r}")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "duration", duration)

    @property
    def angle(self) -> float:
        """Rotation angle ``omega * duration`` about z."""
        return self.omega * self.duration

    @property
    def radius(self) -> float:
        """Signed radius ``1/omega`` of the error-trajectory arc (inf for free evolution)."""
        return math.inf if self.omega == 0 else 1.0 / self.omega


@dataclass(frozen=True)
class PulseSequence:
    segments: tuple[PulseSegment, ...] = ()
    label: str = ""

    def __post_init__(self):
        segs = tuple(
            s if isinstance(s, PulseSegment) else PulseSegment(*s) for s in self.segments
        )
        object.__setattr__(self, "segments", segs)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]], label: str = "") -> PulseSequence:
        """Build from ``(omega, duration)`` pairs."""
        return cls(tuple(PulseSegment(o, d) for o, d in pairs), label)

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self) -> Iterator[PulseSegment]:
        return iter(self.segments)

    def __getitem__(self, i):
        return self.segments[i]

    def __add__(self, other: PulseSequence) -> PulseSequence:
        if not isinstance(other, PulseSequence):
            return NotImplemented
        label = "+".join(x for x in (self.label, other.label) if x)
        return PulseSequence(self.segments + other.segments, label)

    def with_label(self, label: str) -> PulseSequence:
        return PulseSequence(self.segments, label)

    def append(self, segment: PulseSegment) -> PulseSequence:
        return PulseSequence(self.segments + (segment,), self.label)

    @property
    def duration(self) -> float:
        """Total duration ``T``."""
        return math.fsum(s.duration for s in self.segments)

    @property
    def boundaries(self) -> list[float]:
        """Segment boundary times ``[0, t_1, ..., T]``."""
        times = [0.0]
        for s in self.segments:
            times.append(times[-1] + s.duration)
        return times

    def pairs(self) -> list[tuple[float, float]]:
        return [(s.omega, s.duration) for s in self.segments]


@dataclass(frozen=True)
class RotationTarget:
    """Target rotation ``R_z(theta)``.

    ``theta`` is stored in ``(-2pi, 2pi]``, i.e. reduced modulo the 4pi period of the
    spin-1/2 rotation, so ``theta`` and ``theta - 2pi`` stay distinct targets.
    """

    theta: float

    def __post_init__(self):
        theta = float(self.theta)
        if not math.isfinite(theta):
            raise DomainError(f"theta must be finite, got {self.theta!r}")
        four_pi = 4 * math.pi
        reduced = math.fmod(theta, four_pi)
        if reduced <= -2 * math.pi:
            reduced += four_pi
        elif reduced > 2 * math.pi:
            reduced -= four_pi
        object.__setattr__(self, "theta", reduced)


def normalize(seq: PulseSequence) -> PulseSequence:
    """Drop zero-length segments and merge neighbours with equal ``omega``."""
    merged: list[list[float]] = []
    for s in seq.segments:
        if s.duration == 0:
            continue
        if merged and merged[-1][0] == s.omega:
            merged[-1][1] += s.duration
        else:
            merged.append([s.omega, s.duration])
    return PulseSequence.from_pairs(merged, seq.label)


def total_rotation_angle(seq: PulseSequence) -> float:
    """Zeroth-order rotation angle ``sum(omega_i * duration_i)``."""
    return math.fsum(s.angle for s in seq.segments)


def _fmt(x: float) -> str:
    return format(x, ".16e")


def emit_sequence(seq: PulseSequence) -> str:
    """Serialize ``seq`` to a JSON document with 17 significant digits per number."""
    rows = ",\n".join(
        f'    {{"omega": {_fmt(s.omega)}, "duration": {_fmt(s.duration)}}}'
        for s in seq.segments
    )
    body = f"\n{rows}\n  " if rows else ""
    return f'{{\n  "label": {json.dumps(seq.label)},\n  "segments": [{body}]\n}}\n'


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SequenceFormatError(f"{where} must be a number, got {value!r}")
    return float(value)


def parse_sequence(text: str) -> PulseSequence:
    """Parse a sequence document; the result is normalized.

    Raises :class:`SequenceFormatError` for structural problems and
    :class:`ValidationError` for negative or non-finite durations.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceFormatError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SequenceFormatError("document must be an object with 'label' and 'segments'")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SequenceFormatError(f"label must be a string, got {label!r}")
    if "segments" not in doc:
        raise SequenceFormatError("missing field 'segments'")
    raw = doc["segments"]
    if not isinstance(raw, list):
        raise SequenceFormatError("segments must be an array")
    segments = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict):
            raise SequenceFormatError(f"segments[{i}] must be an object")
        for key in ("omega", "duration"):
            if key not in item:
                raise SequenceFormatError(f"segments[{i}] is missing field '{key}'")
        omega = _number(item["omega"], f"segments[{i}].omega")
        duration = _number(item["duration"], f"segments[{i}].duration")
        try:
            segments.append(PulseSegment(omega, duration))
        except ValidationError as exc:
            raise ValidationError(f"segments[{i}]: {exc}") from exc
    return normalize(PulseSequence(tuple(segments), label))

