"""Reidemeister rewrites on Gauss codes, for invariance testing.

R1 and R2 come in insertion and deletion form.  R3 swaps three adjacent
token pairs forming a triangle; its admissible over/under, sign and order
patterns are enumerated from an explicit straight-line local model (three
oriented lines, every orientation, side and over/under choice), so only
geometrically realizable triangle slides are ever applied.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import PatternMismatch
from .gauss import DOUBLE, OVER, UNDER, GaussCode, GaussToken

R1_INS = "R1+"
R1_DEL = "R1-"
R2_INS = "R2+"
R2_DEL = "R2-"
R3 = "R3"

AB, AX, BX = "ab", "ax", "bx"


@dataclass(frozen=True)
class RMove:
    """A move kind with its site (token positions, or insertion gaps)."""

    kind: str
    site: tuple[int, ...]
    params: tuple = ()


def _r3_patterns():
    """Signatures of every realizable triangle slide.

    Local model: line A is the x axis, B the y axis, X the line x + y = d
    with d = +-1; orientations oa, ob, and (dx, -dx) for X; X passes over
    or under both of its crossings, A and B cross either way.  The sign of
    a crossing is +1 exactly when det(over direction, under direction) > 0.
    """
    patterns = set()
    for oa, ob, dx, d, x_over, a_over_b in itertools.product(
        (1, -1), (1, -1), (1, -1), (1, -1), (True, False), (True, False)
    ):
        signs = {
            AB: oa * ob if a_over_b else -oa * ob,
            AX: dx * oa if x_over else -dx * oa,
            BX: dx * ob if x_over else -dx * ob,
        }
        kind = {
            ("a", AB): OVER if a_over_b else UNDER,
            ("b", AB): UNDER if a_over_b else OVER,
            ("a", AX): UNDER if x_over else OVER,
            ("x", AX): OVER if x_over else UNDER,
            ("b", BX): UNDER if x_over else OVER,
            ("x", BX): OVER if x_over else UNDER,
        }
        visits = {
            "a": [(AB, 0), (AX, d * oa)],
            "b": [(AB, 0), (BX, d * ob)],
            "x": [(AX, d * dx), (BX, -d * dx)],
        }
        strands = []
        for who, pairs in visits.items():
            pairs.sort(key=lambda rp: rp[1])
            strands.append(tuple((role, kind[(who, role)]) for role, _ in pairs))
        patterns.add(
            (frozenset(signs.items()), tuple(sorted(strands)))
        )
    return frozenset(patterns)


_R3_PATTERNS = _r3_patterns()


def _r3_site_signature(code: GaussCode, site):
    """Matcher: the signature of a triangle site, or None if not realizable."""
    toks = code.tokens
    site = tuple(sorted(site))
    if len(site) != 3:
        return None
    for p in site:
        if p < 0 or p + 1 >= len(toks):
            return None
    positions = [q for p in site for q in (p, p + 1)]
    if len(set(positions)) != 6:
        return None
    pairs = [(toks[p], toks[p + 1]) for p in site]
    six = [t for pair in pairs for t in pair]
    if any(t.kind == DOUBLE for t in six):
        return None
    labels = sorted({t.label for t in six})
    if len(labels) != 3:
        return None
    counts = {lab: sum(1 for t in six if t.label == lab) for lab in labels}
    if set(counts.values()) != {2}:
        return None
    pair_label_sets = [frozenset((a.label, b.label)) for a, b in pairs]
    if any(len(s) != 2 for s in pair_label_sets):
        return None
    if set(pair_label_sets) != {
        frozenset(c) for c in itertools.combinations(labels, 2)
    }:
        return None
    for a_lab, b_lab, x_lab in itertools.permutations(labels):
        role = {
            frozenset((a_lab, b_lab)): AB,
            frozenset((a_lab, x_lab)): AX,
            frozenset((b_lab, x_lab)): BX,
        }
        crossing_role = {}
        for lab in labels:
            others = [o for o in labels if o != lab]
            # the crossing labelled lab is the one whose strands are the two
            # pairs containing lab; its role is the pair-set complement
            crossing_role[lab] = role[frozenset((others[0], others[1]))]
        signs = {}
        strands = []
        for first, second in pairs:
            sig = []
            for t in (first, second):
                r = crossing_role[t.label]
                sig.append((r, t.kind))
                signs[r] = t.sign
            strands.append(tuple(sig))
        signature = (frozenset(signs.items()), tuple(sorted(strands)))
        if signature in _R3_PATTERNS:
            return signature
    return None


def find_r1_sites(code: GaussCode) -> tuple[RMove, ...]:
    out = []
    for p in range(len(code.tokens) - 1):
        a, b = code.tokens[p], code.tokens[p + 1]
        if a.kind != DOUBLE and b.kind != DOUBLE and a.label == b.label:
            out.append(RMove(R1_DEL, (p,)))
    return tuple(out)


def find_r2_sites(code: GaussCode) -> tuple[RMove, ...]:
    out = []
    toks = code.tokens
    adjacent = []
    for p in range(len(toks) - 1):
        a, b = toks[p], toks[p + 1]
        if (
            a.kind != DOUBLE
            and b.kind == a.kind
            and a.label != b.label
            and a.sign == -b.sign
        ):
            adjacent.append(p)
    for p, q in itertools.combinations(adjacent, 2):
        if q <= p + 1:
            continue
        a, b = toks[p], toks[p + 1]
        c, d = toks[q], toks[q + 1]
        if {a.kind, c.kind} != {OVER, UNDER}:
            continue
        if {c.label, d.label} != {a.label, b.label}:
            continue
        out.append(RMove(R2_DEL, (p, q)))
    return tuple(out)


def find_r3_sites(code: GaussCode) -> tuple[RMove, ...]:
    toks = code.tokens
    candidates = []
    for p in range(len(toks) - 1):
        a, b = toks[p], toks[p + 1]
        if a.kind != DOUBLE and b.kind != DOUBLE and a.label != b.label:
            candidates.append(p)
    out = []
    for site in itertools.combinations(candidates, 3):
        if site[0] + 1 >= site[1] or site[1] + 1 >= site[2]:
            continue
        if _r3_site_signature(code, site) is not None:
            out.append(RMove(R3, site))
    return tuple(out)


def apply_rmove(code: GaussCode, move: RMove) -> GaussCode:
    """Apply a move; raises PatternMismatch unless its site matches."""
    toks = list(code.tokens)
    if move.kind == R1_DEL:
        (p,) = move.site
        if not (0 <= p and p + 1 < len(toks)):
            raise PatternMismatch("R1- site out of range")
        a, b = toks[p], toks[p + 1]
        if a.kind == DOUBLE or b.kind == DOUBLE or a.label != b.label:
            raise PatternMismatch("R1- needs two adjacent visits of one crossing")
        del toks[p : p + 2]
        return GaussCode(tuple(toks))

    if move.kind == R1_INS:
        (gap,) = move.site
        first_kind, sign = move.params
        if not 0 <= gap <= len(toks):
            raise PatternMismatch("R1+ gap out of range")
        if first_kind not in (OVER, UNDER) or sign not in (1, -1):
            raise PatternMismatch("R1+ params must be a kind and a sign")
        label = max(code._crossings, default=0) + 1
        second = UNDER if first_kind == OVER else OVER
        toks[gap:gap] = [
            GaussToken(first_kind, label, sign),
            GaussToken(second, label, sign),
        ]
        return GaussCode(tuple(toks))

    if move.kind == R2_DEL:
        if move not in find_r2_sites(code):
            raise PatternMismatch("R2- site does not match the bigon pattern")
        p, q = move.site
        for pos in sorted((p, p + 1, q, q + 1), reverse=True):
            del toks[pos]
        return GaussCode(tuple(toks))

    if move.kind == R2_INS:
        gap1, gap2 = move.site
        first_kind, parallel, sign_first = move.params
        if not (0 <= gap1 < gap2 <= len(toks)):
            raise PatternMismatch("R2+ needs two distinct gaps in order")
        if first_kind not in (OVER, UNDER) or sign_first not in (1, -1):
            raise PatternMismatch("R2+ params must be a kind, a flag and a sign")
        base = max(code._crossings, default=0)
        a, b = base + 1, base + 2
        other = UNDER if first_kind == OVER else OVER
        sign_of = {a: sign_first, b: -sign_first}
        pair1 = [GaussToken(first_kind, a, sign_of[a]),
                 GaussToken(first_kind, b, sign_of[b])]
        order = (a, b) if parallel else (b, a)
        pair2 = [GaussToken(other, lab, sign_of[lab]) for lab in order]
        toks[gap2:gap2] = pair2
        toks[gap1:gap1] = pair1
        return GaussCode(tuple(toks))

    if move.kind == R3:
        site = tuple(sorted(move.site))
        if _r3_site_signature(code, site) is None:
            raise PatternMismatch("R3 site does not match any realizable triangle")
        for p in site:
            toks[p], toks[p + 1] = toks[p + 1], toks[p]
        return GaussCode(tuple(toks))

    raise PatternMismatch(f"unknown move kind {move.kind!r}")


def insertion_moves(code: GaussCode, rng: random.Random, budget: int = 6):
    """A seeded sample of legal R1+/R2+ moves on the given code."""
    moves = []
    size = len(code.tokens)
    for _ in range(budget):
        gap = rng.randrange(size + 1)
        moves.append(
            RMove(R1_INS, (gap,), (rng.choice((OVER, UNDER)), rng.choice((1, -1))))
        )
        if size >= 1:
            g1 = rng.randrange(size)
            g2 = rng.randrange(g1 + 1, size + 1)
            moves.append(
                RMove(
                    R2_INS,
                    (g1, g2),
                    (
                        rng.choice((OVER, UNDER)),
                        rng.choice((True, False)),
                        rng.choice((1, -1)),
                    ),
                )
            )
    return tuple(moves)


def r3_bearing_variants(code: GaussCode, label: int):
    """Variants reached by two finger pokes around one crossing.

    A finger hanging off the end of the code is poked across both strands
    of the crossing by two R2 insertions: partner tokens land just before
    its first and just after its second visit, and the second poke nests
    inside the first, extending the finger tip.  Combinations whose result
    carries a realizable triangle are returned as (variant, sites) pairs.
    """
    info = code.crossing(label)
    size = len(code.tokens)
    out = []
    for kind1, par1, sig1 in itertools.product((OVER, UNDER), (True, False), (1, -1)):
        poke1 = apply_rmove(
            code, RMove(R2_INS, (info.first, size), (kind1, par1, sig1))
        )
        # pair1 sits just before the first visit, so the second visit moved
        # to info.second + 2; the finger pair is the final two tokens
        for kind2, par2, sig2 in itertools.product(
            (OVER, UNDER), (True, False), (1, -1)
        ):
            poke2 = apply_rmove(
                poke1,
                RMove(R2_INS, (info.second + 3, size + 3), (kind2, par2, sig2)),
            )
            sites = find_r3_sites(poke2)
            if sites:
                out.append((poke2, sites))
    return tuple(out)
