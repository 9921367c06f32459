"""Linear chord diagrams of long singular knots.

A chord diagram is written as a word in which every chord letter appears
exactly twice and first occurrences run A, B, C, ... in order.  Words are
linear (no rotation quotient), matching the long-knot setting, and serve
as the lookup keys of actuality tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonCanonicalWord
from .gauss import DOUBLE, GaussCode, GaussToken

LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True)
class ChordDiagram:
    """A canonical chord word; equality as linear diagrams is word equality."""

    word: str

    def __post_init__(self):
        _check_canonical(self.word)

    @property
    def degree(self) -> int:
        return len(self.word) // 2

    def __str__(self):
        return self.word


def _check_canonical(word: str):
    if len(word) % 2:
        raise NonCanonicalWord(f"odd-length chord word {word!r}")
    counts = {}
    order = []
    for ch in word:
        if ch not in LETTERS:
            raise NonCanonicalWord(f"bad chord letter {ch!r} in {word!r}")
        if ch not in counts:
            order.append(ch)
        counts[ch] = counts.get(ch, 0) + 1
    if order != list(LETTERS[: len(order)]):
        raise NonCanonicalWord(f"first occurrences out of order in {word!r}")
    for ch, c in counts.items():
        if c != 2:
            raise NonCanonicalWord(f"letter {ch} appears {c} times in {word!r}")


def canonical_word(pair_sequence) -> str:
    """Canonical word of a pairing given as a sequence of chord ids, two each."""
    seen = {}
    out = []
    for item in pair_sequence:
        if item not in seen:
            if len(seen) >= len(LETTERS):
                raise NonCanonicalWord("chord diagram degree exceeds 26")
            seen[item] = LETTERS[len(seen)]
        out.append(seen[item])
    word = "".join(out)
    _check_canonical(word)
    return word


def word_from_pairs(pairs) -> str:
    """Canonical word of chords given as (first, second) position pairs."""
    events = []
    for idx, (a, b) in enumerate(pairs):
        events.append((a, idx))
        events.append((b, idx))
    events.sort()
    return canonical_word(idx for _, idx in events)


def extract(code: GaussCode) -> ChordDiagram:
    """Chord diagram underlying a singular code: the pairing of its double visits."""
    sequence = [tok.label for tok in code.tokens if tok.kind == DOUBLE]
    return ChordDiagram(canonical_word(sequence))


def enumerate_diagrams(degree: int) -> tuple[ChordDiagram, ...]:
    """All canonical chord words of the given degree, in a fixed order.

    There are (2d-1)!! of them: the first open position always takes the
    next letter and is paired with each later open position in turn.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    size = 2 * degree
    results = []

    def fill(word, open_positions):
        if not open_positions:
            results.append(ChordDiagram("".join(word)))
            return
        first = open_positions[0]
        letter = LETTERS[(size - len(open_positions)) // 2]
        for j in range(1, len(open_positions)):
            partner = open_positions[j]
            word[first] = letter
            word[partner] = letter
            fill(word, open_positions[1:j] + open_positions[j + 1 :])
            word[first] = None
            word[partner] = None

    if degree == 0:
        return (ChordDiagram(""),)
    fill([None] * size, tuple(range(size)))
    return tuple(results)


def descending_representative(diagram: ChordDiagram) -> GaussCode:
    """The fixed representative of a chord diagram: double points only.

    The code visits double points exactly in the order of the word, has no
    regular crossings, and is descending by construction.  All numeric
    actuality tables built in this package are relative to this choice.
    """
    letter_ids = {}
    tokens = []
    for ch in diagram.word:
        if ch not in letter_ids:
            letter_ids[ch] = len(letter_ids) + 1
        tokens.append(GaussToken(DOUBLE, letter_ids[ch]))
    return GaussCode(tuple(tokens))
