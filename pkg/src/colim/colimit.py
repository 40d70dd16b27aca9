"""Element-level queries on the colimit group of a sequence.

An element is a pair ``(stage, vector)`` up to the identification
``(i, x) ~ (j, a_ij @ x)``.  A finite truncation can confirm facts that
are witnessed at a bounded stage but cannot refute tail-dependent ones,
so queries answer in three values: ``yes(witness)``, ``no``, or
``unknown(horizon)``.  Only injective transitions (mono mode) upgrade
some answers to a definitive ``no``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .diagrams import SequenceDiagram, extend_to, transition
from .matrices import Matrix


@dataclass(frozen=True)
class ColimitElement:
    stage: int
    vec: tuple

    def __post_init__(self):
        object.__setattr__(self, "vec", tuple(int(x) for x in self.vec))
        if self.stage < 1:
            raise ValueError("stages are 1-based")


@dataclass(frozen=True)
class Trilean:
    kind: str  # "yes" | "no" | "unknown"
    stage: Optional[int] = None  # witness for yes, searched horizon for unknown

    @staticmethod
    def yes(witness: int) -> "Trilean":
        return Trilean("yes", witness)

    @staticmethod
    def no() -> "Trilean":
        return Trilean("no")

    @staticmethod
    def unknown(horizon: int) -> "Trilean":
        return Trilean("unknown", horizon)

    @property
    def is_yes(self) -> bool:
        return self.kind == "yes"

    @property
    def is_no(self) -> bool:
        return self.kind == "no"

    def __str__(self) -> str:
        if self.kind == "yes":
            return f"yes({self.stage})"
        if self.kind == "unknown":
            return f"unknown({self.stage})"
        return "no"


def _check_element(seq: SequenceDiagram, e: ColimitElement) -> None:
    if not (1 <= e.stage <= seq.length):
        raise ValueError(f"stage {e.stage} out of range 1..{seq.length}")
    if len(e.vec) != seq.ranks[e.stage - 1]:
        raise ValueError(
            f"vector length {len(e.vec)} does not match rank "
            f"{seq.ranks[e.stage - 1]} at stage {e.stage}"
        )


def _prepare(seq: SequenceDiagram, horizon: int) -> SequenceDiagram:
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if seq.period is not None:
        return extend_to(seq, horizon)
    if horizon > seq.length:
        raise ValueError(f"horizon {horizon} beyond truncation of length {seq.length}")
    return seq


def pushforward(seq: SequenceDiagram, e: ColimitElement, j: int) -> ColimitElement:
    """Representative of ``e`` at the later stage ``j``."""
    _check_element(seq, e)
    return ColimitElement(j, transition(seq, e.stage, j).apply(e.vec))


def equal_at(
    seq: SequenceDiagram, e1: ColimitElement, e2: ColimitElement, horizon: int
) -> Trilean:
    """Least stage within the horizon at which the two elements agree.

    In mono mode disagreement at ``max(stage1, stage2)`` is definitive,
    since injective transitions cannot merge distinct vectors later.
    """
    seq = _prepare(seq, horizon)
    _check_element(seq, e1)
    _check_element(seq, e2)
    start = max(e1.stage, e2.stage)
    if horizon < start:
        return Trilean.unknown(horizon)
    x1 = transition(seq, e1.stage, start).apply(e1.vec)
    x2 = transition(seq, e2.stage, start).apply(e2.vec)
    if seq.mono_required:
        return Trilean.yes(start) if x1 == x2 else Trilean.no()
    for k in range(start, horizon + 1):
        if x1 == x2:
            return Trilean.yes(k)
        if k < horizon:
            step = seq.transitions[k - 1]
            x1 = step.apply(x1)
            x2 = step.apply(x2)
    return Trilean.unknown(horizon)


def eventual_equalizer(
    seq: SequenceDiagram, i: int, j: int, p: Matrix, horizon: int
) -> Trilean:
    """Least ``i0 in [j, horizon]`` with ``a_{j,i0} * p == a_{i,i0}``.

    In mono mode ``p != a_ij`` is definitively ``no``: postcomposing with
    an injective map preserves the inequality forever.
    """
    if not (1 <= i <= j):
        raise ValueError("need 1 <= i <= j")
    seq = _prepare(seq, max(horizon, j))
    if (p.rows, p.cols) != (seq.ranks[j - 1], seq.ranks[i - 1]):
        raise ValueError(
            f"p has shape {p.rows}x{p.cols}, expected "
            f"{seq.ranks[j - 1]}x{seq.ranks[i - 1]}"
        )
    if seq.mono_required:
        return Trilean.yes(j) if p == transition(seq, i, j) else Trilean.no()
    for i0 in range(j, horizon + 1):
        if transition(seq, j, i0) * p == transition(seq, i, i0):
            return Trilean.yes(i0)
    return Trilean.unknown(horizon)


def factor_through_stage(
    seq: SequenceDiagram, images: Sequence[ColimitElement], horizon: int
) -> Optional[tuple]:
    """Factor the map determined by basis images through a finite stage.

    Returns the least ``(i0, g)`` such that column ``k`` of ``g`` is a
    stage-``i0`` representative of ``images[k]``; in simplicial mode the
    stage is advanced until all representatives are entrywise
    nonnegative.  ``None`` when the horizon is exhausted.
    """
    if not images:
        raise ValueError("need at least one image")
    seq = _prepare(seq, horizon)
    for e in images:
        _check_element(seq, e)
    start = max(e.stage for e in images)
    for i0 in range(start, horizon + 1):
        cols = [transition(seq, e.stage, i0).apply(e.vec) for e in images]
        if seq.simplicial and any(x < 0 for c in cols for x in c):
            continue
        return i0, Matrix.from_columns(cols, rows=seq.ranks[i0 - 1])
    return None


def cone_member(seq: SequenceDiagram, e: ColimitElement, horizon: int) -> Trilean:
    """Whether the element lies in the colimit positive cone, i.e. some
    pushforward within the horizon is entrywise nonnegative."""
    if not seq.simplicial:
        raise ValueError("cone membership is only defined in simplicial mode")
    seq = _prepare(seq, horizon)
    _check_element(seq, e)
    x = e.vec
    for k in range(e.stage, horizon + 1):
        if all(v >= 0 for v in x):
            return Trilean.yes(k)
        if k < horizon:
            x = seq.transitions[k - 1].apply(x)
    return Trilean.unknown(horizon)


def divisible(
    seq: SequenceDiagram, e: ColimitElement, m: int, horizon: int
) -> Trilean:
    """Whether the element is divisible by ``m`` in the colimit, witnessed
    by a pushforward that is 0 mod ``m`` componentwise."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    seq = _prepare(seq, horizon)
    _check_element(seq, e)
    x = e.vec
    for k in range(e.stage, horizon + 1):
        if all(v % m == 0 for v in x):
            return Trilean.yes(k)
        if k < horizon:
            x = seq.transitions[k - 1].apply(x)
    return Trilean.unknown(horizon)
