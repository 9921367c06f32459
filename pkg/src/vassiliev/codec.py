"""Text formats: Gauss codes, PD codes, actuality tables, corpus records.

All formats are line-oriented ASCII; lines starting with ``#`` and blank
lines are ignored.

Gauss format
    Whitespace-separated tokens ``O<id><sign>``, ``U<id><sign>``, ``D<id>``,
    e.g. ``O1+ U2+ O3+ U1+ O2+ U3+``.  The empty token list is the unknot.

PD format
    One vertex per line: ``X a b c d`` (crossing, ``a`` = incoming under
    strand, labels counterclockwise) or ``P a b c d`` (double point with
    strands (a, c) and (b, d)).  Labels 1 .. 2V+1 run along the strand.

Table format
    Lines ``<chord-word> <value>``; the empty chord word is written ``-``.
    Values are integers, rationals ``p/q``, or basis terms ``e[<word>]``;
    numeric and formal values never mix in one table.

Corpus format
    One record per line: ``<name> <format-tag> <code...>`` with tag
    ``gauss`` or ``pd``; PD vertex lines are joined by ``;``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .chords import ChordDiagram
from .errors import (
    DuplicateKey,
    MalformedToken,
    MixedValueKinds,
    NonCanonicalWord,
)
from .gauss import DOUBLE, GaussCode, GaussToken
from .oracles import FORMAL, NUMERIC, ActualityTable, FormalValue
from .planar import PDVertex, PlanarDiagram

GAUSS = "gauss"
PD = "pd"
TABLE = "table"
CORPUS = "corpus"

EMPTY_WORD_KEY = "-"


@dataclass(frozen=True)
class RawDocument:
    """A tagged piece of diagram text, as stored in corpus files."""

    format: str
    payload: str


def _content_lines(text: str):
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            yield line


_TOKEN = re.compile(r"^(?:([OU])([0-9]+)([+-])|D([0-9]+))$")


def parse_gauss(text) -> GaussCode:
    """Parse Gauss text into a validated code."""
    if isinstance(text, RawDocument):
        text = text.payload
    tokens = []
    for line in _content_lines(text):
        for word in line.split():
            m = _TOKEN.match(word)
            if not m:
                raise MalformedToken(f"bad Gauss token {word!r}")
            if m.group(4) is not None:
                tokens.append(GaussToken(DOUBLE, int(m.group(4))))
            else:
                sign = 1 if m.group(3) == "+" else -1
                tokens.append(GaussToken(m.group(1), int(m.group(2)), sign))
    return GaussCode(tuple(tokens))


def serialize_gauss(code: GaussCode) -> str:
    return " ".join(str(t) for t in code.tokens)


def parse_pd(text) -> PlanarDiagram:
    """Parse PD text into a validated planar diagram."""
    if isinstance(text, RawDocument):
        text = text.payload
    vertices = []
    for line in _content_lines(text):
        parts = line.split()
        if len(parts) != 5 or parts[0] not in ("X", "P"):
            raise MalformedToken(f"bad PD line {line!r}")
        try:
            labels = tuple(int(p) for p in parts[1:])
        except ValueError:
            raise MalformedToken(f"bad PD labels in {line!r}") from None
        vertices.append(PDVertex(parts[0], labels))
    return PlanarDiagram(tuple(vertices))


def serialize_pd(diagram: PlanarDiagram) -> str:
    return "\n".join(str(v) for v in diagram.vertices)


_RATIONAL = re.compile(r"^-?[0-9]+(?:/[0-9]+)?$")
_BASIS = re.compile(r"^e\[([A-Z]*)\]$")


def _parse_word(word: str) -> str:
    if word == EMPTY_WORD_KEY:
        return ""
    try:
        return ChordDiagram(word).word
    except NonCanonicalWord:
        raise
    except Exception as exc:  # pragma: no cover - ChordDiagram only raises above
        raise NonCanonicalWord(str(exc)) from None


def parse_table(text) -> ActualityTable:
    """Parse a table file; the degree is the largest chord word present."""
    if isinstance(text, RawDocument):
        text = text.payload
    entries = []
    seen = set()
    kind = None
    for line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise MalformedToken(f"table line needs word and value: {line!r}")
        word = _parse_word(parts[0])
        if word in seen:
            raise DuplicateKey(f"chord word {parts[0]!r} listed twice")
        seen.add(word)
        raw = parts[1]
        basis = _BASIS.match(raw)
        if basis is not None:
            basis_word = basis.group(1)
            if basis_word:
                ChordDiagram(basis_word)  # canonicality check
            value = FormalValue.basis(basis_word)
            this_kind = FORMAL
        elif _RATIONAL.match(raw):
            value = Fraction(raw)
            this_kind = NUMERIC
        else:
            raise MalformedToken(f"bad table value {raw!r}")
        if kind is None:
            kind = this_kind
        elif kind != this_kind:
            raise MixedValueKinds("table mixes numeric and formal values")
        entries.append((word, value))
    if kind is None:
        kind = NUMERIC
    degree = max((len(w) // 2 for w, _ in entries), default=0)
    return ActualityTable(degree=degree, kind=kind, entries=tuple(entries))


def _format_value(value) -> str:
    if isinstance(value, FormalValue):
        if len(value.terms) != 1 or value.terms[0][1] != 1:
            raise MalformedToken(
                "table files store single basis terms; got a combination"
            )
        return f"e[{value.terms[0][0]}]"
    return str(value)


def serialize_table(table: ActualityTable) -> str:
    lines = [
        f"{word or EMPTY_WORD_KEY} {_format_value(value)}"
        for word, value in table.entries
    ]
    return "\n".join(lines) + "\n"


def parse_corpus(text) -> tuple[tuple[str, RawDocument], ...]:
    """Parse corpus records into (name, document) pairs."""
    if isinstance(text, RawDocument):
        text = text.payload
    records = []
    for line in _content_lines(text):
        parts = line.split(None, 2)
        if len(parts) < 2:
            raise MalformedToken(f"corpus record needs name and tag: {line!r}")
        name, tag = parts[0], parts[1]
        body = parts[2] if len(parts) == 3 else ""
        if tag == GAUSS:
            payload = body
        elif tag == PD:
            payload = "\n".join(seg.strip() for seg in body.split(";") if seg.strip())
        else:
            raise MalformedToken(f"unknown corpus format tag {tag!r}")
        records.append((name, RawDocument(tag, payload)))
    return tuple(records)


def serialize_corpus(records) -> str:
    lines = []
    for name, doc in records:
        if doc.format == PD:
            body = ";".join(l for l in doc.payload.splitlines() if l.strip())
        else:
            body = doc.payload
        lines.append(f"{name} {doc.format} {body}".rstrip())
    return "\n".join(lines) + "\n"
