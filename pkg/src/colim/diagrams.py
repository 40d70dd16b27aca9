"""Sequences of free abelian / simplicial groups with transition maps.

A diagram stores a finite truncation: stage ranks ``r_1, ..., r_N`` and
the ``N-1`` transition matrices, where transition ``t`` maps stage ``t``
to stage ``t+1``.  An optional period declaration asserts that the
transitions repeat forever after a prefix; that declaration is the only
way to state knowledge about the infinite tail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .matrices import Matrix, is_injective

PLAIN = "plain"
SIMPLICIAL = "simplicial"


@dataclass(frozen=True)
class SequenceDiagram:
    """A truncated sequence of stages and transition homomorphisms.

    The constructor is deliberately permissive about shape mismatches;
    :func:`validate` reports every violated invariant as data.
    """

    mode: str
    ranks: tuple
    transitions: tuple
    mono_required: bool = False
    period: Optional[tuple] = None  # (prefix_length, period_length)

    def __post_init__(self):
        if self.mode not in (PLAIN, SIMPLICIAL):
            raise ValueError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if not self.ranks:
            raise ValueError("a diagram needs at least one stage")
        if any(r < 0 for r in self.ranks):
            raise ValueError("ranks must be >= 0")
        if self.period is not None:
            prefix, length = self.period
            if prefix < 0 or length < 1:
                raise ValueError("period must be (prefix >= 0, length >= 1)")
            object.__setattr__(self, "period", (int(prefix), int(length)))

    @property
    def length(self) -> int:
        return len(self.ranks)

    @property
    def simplicial(self) -> bool:
        return self.mode == SIMPLICIAL


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "clean"
        return "\n".join(self.violations)


def validate(seq: SequenceDiagram) -> ValidationReport:
    """Check every diagram invariant; violations are data, not faults.

    Transition indices in messages are 1-based (transition ``t`` maps
    stage ``t`` to stage ``t+1``).
    """
    report = ValidationReport()
    n = seq.length
    if len(seq.transitions) != n - 1:
        report.violations.append(
            f"expected {n - 1} transitions for {n} stages, got {len(seq.transitions)}"
        )
    for t, m in enumerate(seq.transitions, start=1):
        if t >= n:
            break
        if (m.rows, m.cols) != (seq.ranks[t], seq.ranks[t - 1]):
            report.violations.append(
                f"shape mismatch at transition {t}: got {m.rows}x{m.cols}, "
                f"expected {seq.ranks[t]}x{seq.ranks[t - 1]}"
            )
            continue
        if seq.simplicial and not m.is_nonnegative():
            report.violations.append(f"negative entry at transition {t}")
        if seq.mono_required and not is_injective(m):
            report.violations.append(f"non-injective transition {t}")
    if seq.period is not None:
        prefix, length = seq.period
        if prefix + length > len(seq.transitions):
            report.violations.append(
                f"period declaration needs transitions up to {prefix + length}, "
                f"only {len(seq.transitions)} stored"
            )
        else:
            for t in range(prefix, len(seq.transitions)):
                ref = prefix + (t - prefix) % length
                if seq.transitions[t] != seq.transitions[ref]:
                    report.violations.append(
                        f"transition {t + 1} breaks the declared period "
                        f"(differs from transition {ref + 1})"
                    )
    return report


def transition(seq: SequenceDiagram, i: int, j: int) -> Matrix:
    """Composite transition from stage ``i`` to stage ``j`` (1-based);
    the ``i = j`` case is the identity."""
    if not (1 <= i <= j <= seq.length):
        raise ValueError(f"stages ({i}, {j}) out of range 1..{seq.length}")
    m = Matrix.identity(seq.ranks[i - 1])
    for t in range(i - 1, j - 1):
        m = seq.transitions[t] * m
    return m


def extend_to(seq: SequenceDiagram, stages: int) -> SequenceDiagram:
    """Truncation with at least ``stages`` stages, repeating the declared
    period; the period declaration is preserved.  Errors when the tail is
    undeclared."""
    if stages <= seq.length:
        return seq
    if seq.period is None:
        raise ValueError(f"stage {stages} beyond truncation of length {seq.length}")
    prefix, length = seq.period
    if prefix + length > len(seq.transitions):
        raise ValueError("period declaration is not covered by the stored transitions")
    transitions = list(seq.transitions)
    ranks = list(seq.ranks)
    while len(ranks) < stages:
        t = len(transitions)
        ref = prefix + (t - prefix) % length
        m = transitions[ref]
        transitions.append(m)
        ranks.append(m.rows)
    return SequenceDiagram(seq.mode, ranks, transitions, seq.mono_required, seq.period)


def unroll(seq: SequenceDiagram, horizon: int) -> SequenceDiagram:
    """Non-periodic diagram of length ``horizon`` repeating the declared
    period; identity on non-periodic input with ``horizon == length``."""
    if horizon < seq.length:
        raise ValueError(f"horizon {horizon} below current length {seq.length}")
    if seq.period is None:
        if horizon != seq.length:
            raise ValueError("cannot unroll a diagram without a period declaration")
        return seq
    ext = extend_to(seq, horizon)
    return SequenceDiagram(ext.mode, ext.ranks, ext.transitions, ext.mono_required, None)
