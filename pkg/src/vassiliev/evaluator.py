"""Evaluation of a type-m invariant from an actuality table.

The recursion: a code with more than m double points evaluates to zero
outright.  Otherwise the code is swept into its exposed descending form;
the value is the table entry of the terminal's chord word plus the signed
sum of the evaluations of the (k+1)-singular diagrams seen at each switch.

The exposed descending form switches a crossing to first-visit-under
exactly when it left-interleaves an odd number of chords (its two visits
straddle the chord's first visit, with the second inside the chord), and
to first-visit-over otherwise.  Plain descending order is not enough:
a descending diagram whose strands thread through a double point's loop
is a genuinely different singular knot than the bare representative with
the same chord word, so word lookup would be wrong there.  Pulling the
loop below the interleaving strands is exactly one switch per offending
crossing, so each node still emits at most n events, and after it the
terminal's value depends on its chord word alone.

The recursion tree is walked with structure sharing: a child differs from
its parent only by which sites have been doubled and switched, so nodes
carry (doubled sites, pending switch list) over one shared token layout.
Values and traces are identical to rebuilding every child diagram
explicitly; the tests cross-check this against ``descending_path``
telescoping and full resolution expansion.

``elementary_ops`` counts skein steps: one per recursion node, one per
emitted child event and one per table lookup.  Token bookkeeping per node
is linear in the diagram, so total work stays within a constant times
the summed diagram length over all nodes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import chords
from .errors import BoundViolation, LookupMiss
from .gauss import (
    OVER,
    UNDER,
    DOUBLE,
    GaussCode,
    GaussToken,
    change_crossing,
    random_diagram,
)
from .oracles import ActualityTable, value_norm


@dataclass(frozen=True)
class EvalConfig:
    """Invariant type m plus the table of values on the fixed representatives."""

    m: int
    table: ActualityTable
    memoize: bool = False

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("type must be >= 0")
        if self.table.degree != self.m:
            raise ValueError(
                f"table degree {self.table.degree} does not match type {self.m}"
            )


@dataclass
class EvalTrace:
    """Instrumentation of one evaluation run."""

    nodes_per_level: dict = field(default_factory=dict)
    p_per_node: list = field(default_factory=list)
    node_levels: list = field(default_factory=list)
    max_crossings_seen: int = 0
    elementary_ops: int = 0
    table_lookups: int = 0

    def total_nodes(self) -> int:
        return sum(self.nodes_per_level.values())

    def as_dict(self) -> dict:
        return {
            "nodes_per_level": {str(k): v for k, v in self.nodes_per_level.items()},
            "p_per_node": list(self.p_per_node),
            "node_levels": list(self.node_levels),
            "max_crossings_seen": self.max_crossings_seen,
            "elementary_ops": self.elementary_ops,
            "table_lookups": self.table_lookups,
        }


@dataclass(frozen=True)
class ValueWithTrace:
    value: object
    trace: EvalTrace


def evaluate(code: GaussCode, cfg: EvalConfig) -> ValueWithTrace:
    """Evaluate the invariant on a code, with full trace instrumentation."""
    trace = EvalTrace()
    zero = cfg.table.zero()
    if code.k > cfg.m:
        trace.elementary_ops += 1
        return ValueWithTrace(zero, trace)

    base_pairs = [code.double_positions(lab) for lab in code.double_labels()]
    infos = sorted(code._crossings.values(), key=lambda c: c.first)
    count = len(infos)
    firsts = [c.first for c in infos]
    seconds = [c.second for c in infos]
    under0 = [c.first_kind == UNDER for c in infos]
    signs0 = [c.sign for c in infos]

    def left_interleaves(x, j) -> bool:
        return firsts[x] < firsts[j] < seconds[x] < seconds[j]

    # crossings whose visits straddle site j's first visit from the left;
    # doubling j flips exactly their target side
    il_of_site = [
        tuple(x for x in range(count) if left_interleaves(x, j))
        for j in range(count)
    ]
    base_parity = [
        sum(1 for b1, b2 in base_pairs if firsts[x] < b1 < seconds[x] < b2) % 2
        for x in range(count)
    ]

    def target_under(x, doubled) -> bool:
        parity = base_parity[x]
        for j in doubled:
            if left_interleaves(x, j):
                parity ^= 1
        return bool(parity)

    def sign_at_target(x, doubled) -> int:
        # after a sweep the crossing sits at its target side; its sign is
        # the original one iff that side is the original side
        return signs0[x] if target_under(x, doubled) == under0[x] else -signs0[x]

    k0 = code.k
    m = cfg.m
    lookup = cfg.table.lookup
    trace.max_crossings_seen = code.n + code.k
    cache = {} if cfg.memoize else None

    def word_of(doubled) -> str:
        pairs = base_pairs + [(firsts[j], seconds[j]) for j in doubled]
        return chords.word_from_pairs(pairs)

    def record(level, p):
        trace.nodes_per_level[level] = trace.nodes_per_level.get(level, 0) + 1
        trace.p_per_node.append(p)
        trace.node_levels.append(level)
        trace.elementary_ops += 2  # this node and its table lookup
        trace.table_lookups += 1

    def node(doubled, wrongs):
        """One recursion node: doubled sites plus its pending switches.

        ``wrongs`` holds (site, current sign) in sweep order; every switch
        emits the (k+1)-singular child obtained by doubling that site in
        the partially corrected code.
        """
        if cache is not None:
            hit = cache.get((doubled, wrongs))
            if hit is not None:
                return hit
        level = k0 + len(doubled)
        record(level, len(wrongs))
        value = lookup(word_of(doubled))
        if level < m:
            for j, (site, sign) in enumerate(wrongs):
                trace.elementary_ops += 1
                grown = doubled + (site,)
                if level + 1 < m:
                    reswept = tuple(
                        (y, sign_at_target(y, doubled))
                        for y in il_of_site[site]
                        if y not in grown
                    )
                    child = node(grown, reswept + wrongs[j + 1 :])
                else:
                    # leaf children: only the event count and word matter
                    p = (
                        sum(1 for y in il_of_site[site] if y not in grown)
                        + len(wrongs)
                        - j
                        - 1
                    )
                    record(level + 1, p)
                    child = lookup(word_of(grown))
                if sign > 0:
                    value = value + child
                else:
                    value = value - child
        if cache is not None:
            cache[(doubled, wrongs)] = value
        return value

    root_wrongs = tuple(
        (x, signs0[x])
        for x in range(count)
        if under0[x] != target_under(x, ())
    )
    return ValueWithTrace(node((), root_wrongs), trace)


@dataclass(frozen=True)
class BoundReport:
    """Observed path constants and value norm for one evaluation."""

    n: int
    m: int
    k0: int
    a_max: float
    b_max: float
    value_norm: object
    bound_rhs: object = None


def check_bounds(result: ValueWithTrace, code: GaussCode, cfg: EvalConfig,
                 constants: dict | None = None) -> BoundReport:
    """Recompute the structural bounds from a trace; they must never fail.

    Asserts that every node switched at most as many crossings as its
    diagram has, and that no diagram in the run outgrew the input by more
    than one vertex per level.  Raises BoundViolation on any failure.
    """
    trace = result.trace
    n, k0, m = code.n, code.k, cfg.m
    a_max = 0.0
    for p, level in zip(trace.p_per_node, trace.node_levels):
        n_node = n - (level - k0)
        if p > n_node:
            raise BoundViolation(f"node at level {level} switched {p} > {n_node}")
        if level > m:
            raise BoundViolation(f"recursion node above the cutoff level {m}")
        if n_node > 0:
            a_max = max(a_max, p / n_node)
    if trace.max_crossings_seen > n + m + 1:
        raise BoundViolation(
            f"diagram grew to {trace.max_crossings_seen} vertices"
        )
    if trace.p_per_node:
        expected_nodes = sum(n**j for j in range(m - k0 + 1))
        if trace.total_nodes() > max(1, expected_nodes):
            raise BoundViolation("recursion produced more nodes than the envelope")
    b_max = trace.max_crossings_seen / n if n else 0.0
    norm = value_norm(result.value)
    rhs = None
    if constants and k0 in constants:
        rhs = constants[k0] * Fraction(n) ** (m - k0) if n else constants[k0]
    return BoundReport(
        n=n, m=m, k0=k0, a_max=a_max, b_max=b_max, value_norm=norm, bound_rhs=rhs
    )


# -- benchmark families ----------------------------------------------------------

def twist_code(n: int, doubles: int = 0) -> GaussCode:
    """The two-strand twist region with n crossings, all positive.

    For odd n this is the (2, n) torus long knot; n = 3 is the trefoil.
    ``doubles`` trailing double points are appended for singular families.
    """
    tokens = []
    for i in range(1, n + 1):
        tokens.append(GaussToken(OVER if i % 2 else UNDER, i, 1))
    for i in range(1, n + 1):
        tokens.append(GaussToken(UNDER if i % 2 else OVER, i, 1))
    for j in range(1, doubles + 1):
        tokens.append(GaussToken(DOUBLE, j))
        tokens.append(GaussToken(DOUBLE, j))
    return GaussCode(tuple(tokens))


def perturbed_descending_code(
    n: int, seed: int, doubles: int = 0, flip_fraction: float = 0.25
) -> GaussCode:
    """A random descending code with a fixed fraction of crossings switched."""
    rng = random.Random(seed)
    code = random_diagram(n, doubles, rng.randrange(2**30))
    tokens = list(code.tokens)
    seen = set()
    for pos, tok in enumerate(tokens):
        if tok.kind == DOUBLE or tok.label in seen:
            continue
        seen.add(tok.label)
        if tok.kind == UNDER:
            info = code.crossing(tok.label)
            tokens[pos] = GaussToken(OVER, tok.label, tok.sign)
            tokens[info.second] = GaussToken(UNDER, tok.label, tok.sign)
    code = GaussCode(tuple(tokens))
    labels = list(code.crossing_labels())
    rng.shuffle(labels)
    for label in labels[: max(1, int(n * flip_fraction))] if n else []:
        code = change_crossing(code, label)
    return code


FAMILIES = ("twist", "random")


def family_code(family: str, n: int, trial: int, seed: int, doubles: int = 0):
    if family == "twist":
        return twist_code(n, doubles)
    if family == "random":
        return perturbed_descending_code(n, seed * 10007 + trial, doubles)
    raise ValueError(f"unknown family {family!r}; pick one of {FAMILIES}")


CSV_HEADER = "family,n,m,k0,trial,elementary_ops,nodes,value_norm,a_max,b_max"


def scaling_experiment(
    family: str,
    n_values,
    cfg: EvalConfig,
    trials: int = 1,
    seed: int = 0,
    doubles: int = 0,
):
    """Evaluate a diagram family over a size sweep; one row per (n, trial)."""
    rows = []
    for n in sorted(n_values):
        for trial in range(trials):
            code = family_code(family, n, trial, seed, doubles)
            result = evaluate(code, cfg)
            report = check_bounds(result, code, cfg)
            rows.append(
                {
                    "family": family,
                    "n": n,
                    "m": cfg.m,
                    "k0": doubles,
                    "trial": trial,
                    "elementary_ops": result.trace.elementary_ops,
                    "nodes": result.trace.total_nodes(),
                    "value_norm": value_norm(result.value),
                    "a_max": report.a_max,
                    "b_max": report.b_max,
                }
            )
    return rows


def rows_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            "%s,%d,%d,%d,%d,%d,%d,%s,%.6f,%.6f"
            % (
                row["family"],
                row["n"],
                row["m"],
                row["k0"],
                row["trial"],
                row["elementary_ops"],
                row["nodes"],
                row["value_norm"],
                row["a_max"],
                row["b_max"],
            )
        )
    return "\n".join(lines) + "\n"


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    pts = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if x > 0 and y > 0]
    mean_x = sum(p[0] for p in pts) / len(pts)
    mean_y = sum(p[1] for p in pts) / len(pts)
    num = sum((x - mean_x) * (y - mean_y) for x, y in pts)
    den = sum((x - mean_x) ** 2 for x, y in pts)
    return num / den
