"""Finite-type invariant evaluation on long-knot diagrams.

Gauss and PD codes, chord diagrams and actuality tables, a skein-recursion
evaluator with complexity instrumentation, independent brute-force oracles,
and dual-graph exposing of double points on planar diagrams.
"""

from .chords import ChordDiagram, descending_representative, enumerate_diagrams, extract
from .codec import (
    RawDocument,
    parse_corpus,
    parse_gauss,
    parse_pd,
    parse_table,
    serialize_corpus,
    serialize_gauss,
    serialize_pd,
    serialize_table,
)
from .evaluator import (
    BoundReport,
    EvalConfig,
    EvalTrace,
    ValueWithTrace,
    check_bounds,
    evaluate,
    scaling_experiment,
    twist_code,
)
from .exposing import (
    ExposingPath,
    ExposureReport,
    PullResult,
    expose_all,
    pull_double_point,
    route_exposing_paths,
)
from .gauss import (
    CrossingChangeEvent,
    DescendingPath,
    GaussCode,
    GaussToken,
    change_crossing,
    descending_path,
    is_descending,
    make_singular,
    random_diagram,
    resolve_double,
)
from .oracles import (
    ActualityTable,
    ArrowConfiguration,
    FormalValue,
    build_actuality_table,
    c2,
    default_configuration,
    expand_singular,
    formal_table,
    select_configuration,
    value_norm,
)
from .planar import PDVertex, PlanarDiagram, random_planar_diagram
from .rmoves import RMove, apply_rmove

__all__ = [name for name in dir() if not name.startswith("_")]
