"""The bundled diagram corpus and its Reidemeister variant generator.

The corpus file ships known long-knot codes (unknot presentations, both
trefoils, the figure eight, connected sums up to eight crossings) and a
few hand-built PD codes.  Invariant values are never stored; every test
recomputes them through the oracles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources

from . import codec, rmoves
from .gauss import GaussCode
from .planar import PlanarDiagram

TREFOIL = "trefoil_r"


@dataclass(frozen=True)
class Corpus:
    records: tuple[tuple[str, codec.RawDocument], ...]

    def gauss_codes(self) -> dict[str, GaussCode]:
        return {
            name: codec.parse_gauss(doc)
            for name, doc in self.records
            if doc.format == codec.GAUSS
        }

    def pd_codes(self) -> dict[str, PlanarDiagram]:
        return {
            name: codec.parse_pd(doc)
            for name, doc in self.records
            if doc.format == codec.PD
        }

    def trefoil(self) -> GaussCode:
        return self.gauss_codes()[TREFOIL]


def load() -> Corpus:
    text = resources.files("vassiliev.data").joinpath("corpus.txt").read_text()
    return Corpus(codec.parse_corpus(text))


def rmove_variants(code: GaussCode, rng: random.Random, insert_budget: int = 4):
    """(variant, move class) pairs one Reidemeister rewrite away from ``code``."""
    out = []
    for mv in rmoves.find_r1_sites(code):
        out.append((rmoves.apply_rmove(code, mv), "R1"))
    for mv in rmoves.find_r2_sites(code):
        out.append((rmoves.apply_rmove(code, mv), "R2"))
    for mv in rmoves.find_r3_sites(code):
        out.append((rmoves.apply_rmove(code, mv), "R3"))
    for mv in rmoves.insertion_moves(code, rng, insert_budget):
        cls = "R1" if mv.kind == rmoves.R1_INS else "R2"
        out.append((rmoves.apply_rmove(code, mv), cls))
    return out


def invariance_pairs(corpus: Corpus, seed: int = 7, insert_budget: int = 3):
    """(base, variant, move class) evidence triples across the whole corpus.

    Includes two-poke finger variants around corpus crossings so that the
    R3 move class is always represented.
    """
    rng = random.Random(seed)
    pairs = []
    for name, code in sorted(corpus.gauss_codes().items()):
        for variant, cls in rmove_variants(code, rng, insert_budget):
            pairs.append((code, variant, cls))
        for label in code.crossing_labels()[:2]:
            bearing = rmoves.r3_bearing_variants(code, label)
            for poked, sites in bearing[:4]:
                pairs.append((code, poked, "R2"))
                for site in sites[:2]:
                    pairs.append((poked, rmoves.apply_rmove(poked, site), "R3"))
    return pairs


def nonsingular_diagrams(corpus: Corpus, seed: int = 11, max_crossings: int = 12):
    """Named nonsingular corpus diagrams plus variants, capped in size."""
    rng = random.Random(seed)
    out = []
    for name, code in sorted(corpus.gauss_codes().items()):
        if code.k == 0 and code.n <= max_crossings:
            out.append((name, code))
        for i, (variant, cls) in enumerate(rmove_variants(code, rng)):
            if variant.k == 0 and variant.n <= max_crossings:
                out.append((f"{name}~{cls.lower()}{i}", variant))
    return out
