"""Gauss codes of long knots with double points, and the moves on them.

A code is an ordered sequence of visits along the open strand.  Regular
crossings are visited once over and once under, with a sign attached to
both visits; double points are visited twice with no over/under role.
Codes are abstract: no planarity or realizability is assumed, and every
operation here is total on abstract codes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import (
    SignMismatch,
    UnbalancedCrossing,
    UnknownCrossing,
    UnknownDouble,
)

OVER = "O"
UNDER = "U"
DOUBLE = "D"

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class GaussToken:
    """One visit along the strand."""

    kind: str
    label: int
    sign: int = 0

    def __post_init__(self):
        if self.kind not in (OVER, UNDER, DOUBLE):
            raise ValueError(f"bad token kind {self.kind!r}")
        if self.kind == DOUBLE:
            if self.sign != 0:
                raise ValueError("double-point tokens carry no sign")
        elif self.sign not in (1, -1):
            raise ValueError("crossing tokens need sign +1 or -1")
        if self.label < 1:
            raise ValueError("labels are positive integers")

    def __str__(self):
        if self.kind == DOUBLE:
            return f"D{self.label}"
        return f"{self.kind}{self.label}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class CrossingInfo:
    """Both visit positions of one regular crossing."""

    first: int
    second: int
    sign: int
    first_kind: str


@dataclass(frozen=True)
class GaussCode:
    """An immutable long-knot diagram with n regular crossings and k double points."""

    tokens: tuple[GaussToken, ...]
    _crossings: dict = field(init=False, repr=False, compare=False)
    _doubles: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        crossings = {}
        doubles = {}
        visits = {}
        for pos, tok in enumerate(self.tokens):
            visits.setdefault((tok.kind == DOUBLE, tok.label), []).append(pos)
        for (is_double, label), positions in visits.items():
            if is_double:
                if len(positions) != 2:
                    raise UnbalancedCrossing(
                        f"double point {label} visited {len(positions)} times"
                    )
                doubles[label] = (positions[0], positions[1])
            else:
                if len(positions) != 2:
                    raise UnbalancedCrossing(
                        f"crossing {label} visited {len(positions)} times"
                    )
                a, b = (self.tokens[p] for p in positions)
                if {a.kind, b.kind} != {OVER, UNDER}:
                    raise UnbalancedCrossing(
                        f"crossing {label} needs one over and one under visit"
                    )
                if a.sign != b.sign:
                    raise SignMismatch(f"crossing {label} visits disagree on sign")
                crossings[label] = CrossingInfo(
                    positions[0], positions[1], a.sign, a.kind
                )
        object.__setattr__(self, "_crossings", crossings)
        object.__setattr__(self, "_doubles", doubles)

    @property
    def n(self) -> int:
        return len(self._crossings)

    @property
    def k(self) -> int:
        return len(self._doubles)

    def __len__(self):
        return len(self.tokens)

    def __str__(self):
        return " ".join(str(t) for t in self.tokens)

    def crossing_labels(self) -> tuple[int, ...]:
        return tuple(sorted(self._crossings))

    def double_labels(self) -> tuple[int, ...]:
        return tuple(sorted(self._doubles))

    def crossing(self, label: int) -> CrossingInfo:
        try:
            return self._crossings[label]
        except KeyError:
            raise UnknownCrossing(f"no crossing labelled {label}") from None

    def double_positions(self, label: int) -> tuple[int, int]:
        try:
            return self._doubles[label]
        except KeyError:
            raise UnknownDouble(f"no double point labelled {label}") from None


EMPTY = GaussCode(())


@dataclass(frozen=True)
class CrossingChangeEvent:
    """One (k+1)-singular diagram produced when a crossing is switched.

    ``sign`` is +1 when a positive crossing was switched to negative,
    per V(+) - V(-) = V(x), and -1 otherwise.
    """

    sign: int
    diagram: GaussCode
    changed_id: int


@dataclass(frozen=True)
class DescendingPath:
    """The crossing-switch path from a code to its descending form."""

    events: tuple[CrossingChangeEvent, ...]
    terminal: GaussCode


def _fresh_crossing_label(code: GaussCode) -> int:
    return max(code._crossings, default=0) + 1


def _fresh_double_label(code: GaussCode) -> int:
    return max(code._doubles, default=0) + 1


def change_crossing(code: GaussCode, label: int) -> GaussCode:
    """Swap over/under at both visits of ``label`` and negate its sign."""
    info = code.crossing(label)
    new = list(code.tokens)
    for pos in (info.first, info.second):
        tok = new[pos]
        flipped = OVER if tok.kind == UNDER else UNDER
        new[pos] = GaussToken(flipped, label, -tok.sign)
    return GaussCode(tuple(new))


def make_singular(code: GaussCode, label: int) -> GaussCode:
    """Replace the crossing ``label`` by a fresh double point, in place."""
    info = code.crossing(label)
    fresh = _fresh_double_label(code)
    new = list(code.tokens)
    for pos in (info.first, info.second):
        new[pos] = GaussToken(DOUBLE, fresh)
    return GaussCode(tuple(new))


def resolve_double(code: GaussCode, label: int, branch: str) -> GaussCode:
    """Replace double point ``label`` by a fresh regular crossing.

    The positive branch makes the first visit Over with sign +1; the
    negative branch is the crossing change of the positive branch, so
    the skein identity holds by construction on abstract codes.
    """
    if branch not in (POSITIVE, NEGATIVE):
        raise ValueError(f"branch must be {POSITIVE!r} or {NEGATIVE!r}")
    first, second = code.double_positions(label)
    fresh = _fresh_crossing_label(code)
    new = list(code.tokens)
    if branch == POSITIVE:
        new[first] = GaussToken(OVER, fresh, 1)
        new[second] = GaussToken(UNDER, fresh, 1)
    else:
        new[first] = GaussToken(UNDER, fresh, -1)
        new[second] = GaussToken(OVER, fresh, -1)
    return GaussCode(tuple(new))


def is_descending(code: GaussCode) -> bool:
    """True iff every regular crossing is first visited on its over strand."""
    return all(info.first_kind == OVER for info in code._crossings.values())


def descending_path(code: GaussCode) -> DescendingPath:
    """Sweep left to right, switching every crossing first met on its under strand.

    Each switch emits the (k+1)-singular diagram obtained by doubling that
    crossing in the partially corrected code, with the skein sign of the
    switch.  At most n events are emitted, the terminal code is descending,
    and for any evaluator E obeying the skein rule
    E(code) = E(terminal) + sum(sign_i * E(event_i.diagram)).
    """
    current = code
    events = []
    for pos in range(len(code.tokens)):
        tok = current.tokens[pos]
        if tok.kind != UNDER:
            continue
        if current.crossing(tok.label).first != pos:
            continue
        events.append(
            CrossingChangeEvent(
                sign=tok.sign,
                diagram=make_singular(current, tok.label),
                changed_id=tok.label,
            )
        )
        current = change_crossing(current, tok.label)
    return DescendingPath(tuple(events), current)


def random_diagram(n: int, k: int, seed: int) -> GaussCode:
    """A reproducible abstract code: shuffled visits, random signs and roles."""
    rng = random.Random(seed)
    tokens = []
    for label in range(1, n + 1):
        sign = rng.choice((1, -1))
        tokens.append(GaussToken(OVER, label, sign))
        tokens.append(GaussToken(UNDER, label, sign))
    for label in range(1, k + 1):
        tokens.append(GaussToken(DOUBLE, label))
        tokens.append(GaussToken(DOUBLE, label))
    rng.shuffle(tokens)
    return GaussCode(tuple(tokens))


def concatenate(left: GaussCode, right: GaussCode) -> GaussCode:
    """Connected sum of long knots: run ``right`` after ``left``."""
    shift_c = max(left._crossings, default=0)
    shift_d = max(left._doubles, default=0)
    tokens = list(left.tokens)
    for tok in right.tokens:
        if tok.kind == DOUBLE:
            tokens.append(GaussToken(DOUBLE, tok.label + shift_d))
        else:
            tokens.append(GaussToken(tok.kind, tok.label + shift_c, tok.sign))
    return GaussCode(tuple(tokens))


def mirror(code: GaussCode) -> GaussCode:
    """Mirror image: over and under swap and every sign is negated."""
    tokens = []
    for tok in code.tokens:
        if tok.kind == DOUBLE:
            tokens.append(tok)
        else:
            flipped = OVER if tok.kind == UNDER else UNDER
            tokens.append(GaussToken(flipped, tok.label, -tok.sign))
    return GaussCode(tuple(tokens))
