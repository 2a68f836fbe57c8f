"""Shared outcome types for the alignment algorithms.

An aligner either recovers a full permutation or reports a typed failure.
Failures are ordinary data, not exceptions: a Monte Carlo harness treats them
as observations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .graph import Permutation


class FailureKind(str, Enum):
    ANCHOR_CONFLICT = "anchor_conflict"
    NON_UNIQUE_MATCH = "non_unique_match"
    NOT_BIJECTION = "not_bijection"


@dataclass(frozen=True)
class AnchorSet:
    """Conflict-free set of cross-graph user pairs (i in G1, j in G2').

    No two pairs share a first coordinate and no two share a second
    coordinate.  Also serves as a seed set for the seeded subroutines.
    """

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, pairs) -> "AnchorSet":
        pairs = tuple(sorted((int(i), int(j)) for i, j in pairs))
        firsts = [p[0] for p in pairs]
        seconds = [p[1] for p in pairs]
        if len(set(firsts)) != len(pairs) or len(set(seconds)) != len(pairs):
            raise ValueError("conflicting pairs: a coordinate appears twice")
        return cls(pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def firsts(self) -> frozenset[int]:
        return frozenset(p[0] for p in self.pairs)

    def seconds(self) -> frozenset[int]:
        return frozenset(p[1] for p in self.pairs)

    def as_mapping(self) -> dict[int, int]:
        return dict(self.pairs)


@dataclass(frozen=True)
class AnchorConflict:
    """Step-1 outcome when two candidate pairs share a coordinate."""

    context: str = ""


def find_conflict(pairs) -> Optional[str]:
    """Return a description of the first coordinate collision, or None."""
    seen_first: dict[int, int] = {}
    seen_second: dict[int, int] = {}
    for i, j in pairs:
        if i in seen_first and seen_first[i] != j:
            return f"users {i}->{seen_first[i]} and {i}->{j} share a first coordinate"
        if j in seen_second and seen_second[j] != i:
            return f"users {seen_second[j]}->{j} and {i}->{j} share a second coordinate"
        seen_first[i] = j
        seen_second[j] = i
    return None


@dataclass(frozen=True)
class AlignmentResult:
    """Recovered permutation, or a typed failure with free-text context."""

    pi_hat: Optional[Permutation] = None
    failure: Optional[FailureKind] = None
    context: str = ""
    anchors: Optional[AnchorSet] = field(default=None, compare=False)

    def __post_init__(self):
        if (self.pi_hat is None) == (self.failure is None):
            raise ValueError("exactly one of pi_hat and failure must be set")

    @property
    def ok(self) -> bool:
        return self.failure is None

    @property
    def n_anchors(self) -> int:
        return len(self.anchors) if self.anchors is not None else 0


def success(pi_hat: Permutation, anchors: Optional[AnchorSet] = None) -> AlignmentResult:
    return AlignmentResult(pi_hat=pi_hat, anchors=anchors)


def failure(kind: FailureKind, context: str = "", anchors: Optional[AnchorSet] = None) -> AlignmentResult:
    return AlignmentResult(failure=kind, context=context, anchors=anchors)
