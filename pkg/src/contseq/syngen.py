"""Synthetic corpora with a known ground-truth sequence distribution.

Publication i draws its sequence type k with probability proportional to
k**-a over a fixed vocabulary of distinct, valid continent sequences. Each
type is materialized as a fixed publication template (one single-affiliation
author per country), so mapping a generated record reproduces its intended
sequence exactly and every record passes ingest filtering. Everything is
driven by PCG64 seeded from :class:`SyntheticSpec`, so equal specs yield
byte-identical corpora.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterator

import numpy as np

from .model import (Affiliation, AuthorRecord, CONTINENTS, Continent,
                    ContinentSequence, ContinentTable, PublicationRecord,
                    default_table)


@dataclass(frozen=True, slots=True)
class SyntheticSpec:
    vocabulary_size: int
    exponent: float
    corpus_size: int
    seed: int = 0

    def __post_init__(self):
        if self.vocabulary_size < 1:
            raise ValueError("vocabulary_size must be >= 1")
        if self.corpus_size < 0:
            raise ValueError("corpus_size must be >= 0")
        if not self.exponent > 0:
            raise ValueError("exponent must be > 0")


def _compositions(budget: int, slots: int) -> Iterator[tuple[int, ...]]:
    # reverse-lexicographic: (budget, 0, ...) first, (0, ..., budget) last
    if slots == 1:
        yield (budget,)
        return
    for first in range(budget, -1, -1):
        for rest in _compositions(budget - first, slots - 1):
            yield (first,) + rest


def sequence_vocabulary(size: int, table: ContinentTable | None = None) -> list[ContinentSequence]:
    """The first ``size`` sequences of the deterministic type enumeration.

    Types are ordered by total country count, then by reverse-lexicographic
    composition over the six continents; type 1 is "Africa (1)". Compositions
    asking for more countries than the table has on a continent are skipped,
    so every type can be materialized with real country labels.
    """
    if table is None:
        table = default_table()
    pools = table.countries_by_continent()
    limits = [len(pools.get(c, ())) for c in CONTINENTS]
    vocabulary: list[ContinentSequence] = []
    for budget in count(1):
        if budget > sum(limits):
            raise ValueError(
                f"vocabulary_size {size} exceeds the distinct sequences "
                f"expressible with this table")
        for composition in _compositions(budget, len(CONTINENTS)):
            if any(c > limit for c, limit in zip(composition, limits)):
                continue
            parts = tuple((continent, c)
                          for continent, c in zip(CONTINENTS, composition) if c > 0)
            vocabulary.append(ContinentSequence(parts))
            if len(vocabulary) == size:
                return vocabulary


def type_probabilities(spec: SyntheticSpec) -> np.ndarray:
    """Normalized type probabilities k**-a, k = 1..vocabulary_size."""
    k = np.arange(1, spec.vocabulary_size + 1, dtype=np.float64)
    weights = k ** (-spec.exponent)
    return weights / weights.sum()


def sample_type_indices(spec: SyntheticSpec) -> np.ndarray:
    """Zero-based type index per publication.

    Inverse-CDF sampling: uniforms from ``PCG64(SeedSequence(seed))`` pushed
    through searchsorted on the cumulative type probabilities.
    """
    if spec.corpus_size == 0:
        return np.empty(0, dtype=np.int64)
    cdf = np.cumsum(type_probabilities(spec))
    cdf[-1] = 1.0
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed)))
    uniforms = rng.random(spec.corpus_size)
    return np.searchsorted(cdf, uniforms, side="right").astype(np.int64)


def _template_authors(type_number: int, sequence: ContinentSequence,
                      pools: dict[Continent, tuple[str, ...]]) -> tuple[AuthorRecord, ...]:
    authors = []
    member = 0
    for continent, n_countries in sequence.parts:
        for label in pools[continent][:n_countries]:
            member += 1
            authors.append(AuthorRecord(
                f"s{type_number:05d}-a{member:02d}",
                (Affiliation(f"synthetic institute {type_number}-{member}", label),)))
    return tuple(authors)


def iter_corpus(spec: SyntheticSpec,
                table: ContinentTable | None = None) -> Iterator[PublicationRecord]:
    """Stream the corpus for ``spec`` without holding it all in memory."""
    if table is None:
        table = default_table()
    indices = sample_type_indices(spec)
    vocabulary = sequence_vocabulary(spec.vocabulary_size, table)
    pools = table.countries_by_continent()
    templates: dict[int, tuple[AuthorRecord, ...]] = {}
    for i, type_index in enumerate(indices):
        key = int(type_index)
        authors = templates.get(key)
        if authors is None:
            authors = _template_authors(key + 1, vocabulary[key], pools)
            templates[key] = authors
        yield PublicationRecord(f"syn-{i:08d}", 2015 + (i % 9), authors)


def generate_corpus(spec: SyntheticSpec,
                    table: ContinentTable | None = None) -> list[PublicationRecord]:
    """Materialize the full synthetic corpus for ``spec``."""
    return list(iter_corpus(spec, table))
