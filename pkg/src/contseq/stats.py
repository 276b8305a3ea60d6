"""Rank-frequency statistics: rank tables, Zipf's-law fits, and Heap's-law
sampling, with uncertainties.

The default estimator is ordinary least squares on log-log coordinates over
all ranks whose count is at least ``min_count`` (default 10); a discrete
maximum-likelihood mode is available via ``method="mle"``. Heap curves are
built by repeatedly sampling publications without replacement and counting
distinct sequences; sampling is bit-reproducible for a fixed seed.
"""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence, TextIO, Union

import numpy as np
from scipy import optimize, stats as scipy_stats

from .errors import EmptyInputError, InsufficientDataError
from .mapping import parse_sequence, render_sequence
from .model import ContinentSequence

_FREQ_SUM_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class RankEntry:
    rank: int
    sequence: ContinentSequence
    count: int
    frequency: float


@dataclass(frozen=True)
class RankTable:
    """All distinct sequences sorted by descending count.

    Ties are broken by ascending rendered text; ranks are dense (1, 2, 3...)
    and never shared. Frequencies are count/total and sum to one within
    1e-12.
    """

    entries: tuple[RankEntry, ...]
    total_count: int

    def __post_init__(self):
        if not self.entries:
            raise EmptyInputError("rank table has no entries")
        if self.total_count < 1:
            raise ValueError("total_count must be >= 1")
        if sum(e.count for e in self.entries) != self.total_count:
            raise ValueError("entry counts do not sum to total_count")
        seen: set[str] = set()
        previous: RankEntry | None = None
        previous_text = ""
        for i, entry in enumerate(self.entries, start=1):
            if entry.rank != i:
                raise ValueError(f"ranks must be dense; expected {i}, got {entry.rank}")
            if entry.count < 1:
                raise ValueError(f"rank {i}: count must be >= 1")
            if abs(entry.frequency - entry.count / self.total_count) > _FREQ_SUM_TOL:
                raise ValueError(f"rank {i}: frequency does not match count/total")
            text = render_sequence(entry.sequence)
            if text in seen:
                raise ValueError(f"duplicate sequence {text!r}")
            seen.add(text)
            if previous is not None:
                if entry.count > previous.count:
                    raise ValueError(f"rank {i}: counts must be non-increasing")
                if entry.count == previous.count and text < previous_text:
                    raise ValueError(f"rank {i}: tie order must follow rendered text")
            previous, previous_text = entry, text
        if abs(math.fsum(e.frequency for e in self.entries) - 1.0) > _FREQ_SUM_TOL:
            raise ValueError("frequencies do not sum to 1")

    @classmethod
    def from_counts(cls, counts: Mapping[ContinentSequence, int]) -> "RankTable":
        """Rank a sequence-to-count mapping."""
        if not counts:
            raise EmptyInputError("no sequences to rank")
        for sequence, count in counts.items():
            if count < 1:
                raise ValueError(f"count for {render_sequence(sequence)!r} must be >= 1")
        total = sum(counts.values())
        ordered = sorted(counts.items(), key=lambda kv: (-kv[1], render_sequence(kv[0])))
        entries = tuple(
            RankEntry(rank, sequence, count, count / total)
            for rank, (sequence, count) in enumerate(ordered, start=1)
        )
        return cls(entries, total)

    def __len__(self) -> int:
        return len(self.entries)


def build_rank_table(sequences: Iterable[ContinentSequence]) -> RankTable:
    """Count a stream of sequences into a rank table.

    Permutation-invariant in the input; raises
    :class:`~contseq.errors.EmptyInputError` on an empty stream.
    """
    counts = Counter(sequences)
    if not counts:
        raise EmptyInputError("no sequences to rank")
    return RankTable.from_counts(counts)


@dataclass(frozen=True, slots=True)
class FitResult:
    """A fitted power-law exponent with its standard error.

    ``intercept`` is log10 of the proportionality constant, so the fitted
    curve is ``y = 10**intercept * x**slope`` with ``slope = -exponent`` for
    rank-frequency fits and ``slope = +exponent`` for vocabulary-growth fits.
    ``fit_range`` is the (min, max) of the independent variable actually
    used.
    """

    exponent: float
    uncertainty: float
    intercept: float
    fit_range: tuple[float, float]
    r_squared: float
    n_points: int
    method: str = "ols"


def _ols_loglog(x: np.ndarray, y: np.ndarray):
    result = scipy_stats.linregress(np.log10(x), np.log10(y))
    return result.slope, result.stderr, result.intercept, result.rvalue ** 2


def _select_entries(table: RankTable, min_count: int,
                    min_rank: int | None, max_rank: int | None) -> list[RankEntry]:
    lo = 1 if min_rank is None else min_rank
    hi = len(table.entries) if max_rank is None else max_rank
    return [e for e in table.entries if e.count >= min_count and lo <= e.rank <= hi]


def fit_zipf(table: RankTable, *, min_count: int = 10,
             min_rank: int | None = None, max_rank: int | None = None,
             method: str = "ols") -> FitResult:
    """Fit the rank-frequency power law and return exponent and uncertainty.

    ``min_count`` drops sparse tail ranks before fitting; ``min_rank`` and
    ``max_rank`` restrict the rank window. With the default ``method="ols"``
    the exponent is the negated slope of a straight-line fit of log frequency
    against log rank, and the uncertainty is the standard error of that
    slope. ``method="mle"`` instead maximizes the discrete power-law
    likelihood over the selected ranks. Raises
    :class:`~contseq.errors.InsufficientDataError` with fewer than three
    usable points.
    """
    selected = _select_entries(table, min_count, min_rank, max_rank)
    if len(selected) < 3:
        raise InsufficientDataError(
            f"need >= 3 usable ranks, have {len(selected)} "
            f"(min_count={min_count}, range={min_rank}:{max_rank})")
    ranks = np.array([e.rank for e in selected], dtype=np.float64)
    freqs = np.array([e.frequency for e in selected], dtype=np.float64)
    used_range = (int(ranks[0]), int(ranks[-1]))
    if method == "ols":
        slope, stderr, intercept, r_squared = _ols_loglog(ranks, freqs)
        return FitResult(-slope, stderr, intercept, used_range, r_squared,
                         len(selected), "ols")
    if method == "mle":
        return _fit_zipf_mle(selected, used_range)
    raise ValueError(f"unknown fit method {method!r}")


def _fit_zipf_mle(selected: list[RankEntry], used_range) -> FitResult:
    """Discrete power-law MLE over the selected ranks.

    Models the selected observations as draws from P(R) proportional to
    R**-a restricted to the selected rank support, and maximizes the
    multinomial likelihood. The uncertainty comes from the observed Fisher
    information (numerical second derivative at the optimum).
    """
    ranks = np.array([e.rank for e in selected], dtype=np.float64)
    counts = np.array([e.count for e in selected], dtype=np.float64)
    n = counts.sum()
    log_ranks = np.log(ranks)
    mean_log = float((counts * log_ranks).sum() / n)

    def nll(a: float) -> float:
        weights = ranks ** (-a)
        return math.log(weights.sum()) + a * mean_log

    result = optimize.minimize_scalar(nll, bounds=(0.05, 20.0), method="bounded",
                                      options={"xatol": 1e-10})
    a_hat = float(result.x)
    h = 1e-4
    second = (nll(a_hat + h) - 2.0 * nll(a_hat) + nll(a_hat - h)) / h ** 2
    uncertainty = 1.0 / math.sqrt(n * second) if second > 0 else float("inf")
    # diagnostics relative to the fitted discrete law, on log-log axes
    constant = 1.0 / float((ranks ** (-a_hat)).sum())
    freqs = counts / n
    predicted = np.log10(constant) - a_hat * np.log10(ranks)
    observed = np.log10(freqs)
    ss_res = float(((observed - predicted) ** 2).sum())
    ss_tot = float(((observed - observed.mean()) ** 2).sum())
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return FitResult(a_hat, uncertainty, math.log10(constant), used_range,
                     r_squared, len(selected), "mle")


#: Rank-window battery swept by :func:`zipf_sensitivity`.
SENSITIVITY_STARTS = (1, 2, 3, 4, 5, 6)
SENSITIVITY_ENDS = (10, 12, 15, 18, 20, 50, 100, 200, 500, 1000, None)


def zipf_sensitivity(table: RankTable, *, min_count: int = 10,
                     starts: Sequence[int] = SENSITIVITY_STARTS,
                     ends: Sequence[int | None] = SENSITIVITY_ENDS,
                     method: str = "ols") -> list[FitResult]:
    """Fit across a battery of rank windows to expose range sensitivity.

    Windows with fewer than three usable points are skipped, as are windows
    that collapse onto an already-reported realized range.
    """
    results: list[FitResult] = []
    seen: set[tuple[float, float]] = set()
    for start in starts:
        for end in ends:
            if end is not None and end - start + 1 < 3:
                continue
            try:
                fit = fit_zipf(table, min_count=min_count, min_rank=start,
                               max_rank=end, method=method)
            except InsufficientDataError:
                continue
            if fit.fit_range in seen:
                continue
            seen.add(fit.fit_range)
            results.append(fit)
    return results


@dataclass(frozen=True, slots=True)
class HeapPoint:
    """One sampled point of the vocabulary-growth curve.

    ``v`` is the distinct-sequence count of the first repeat; ``v_mean`` and
    ``v_sd`` aggregate all repeats (sample standard deviation, 0.0 for a
    single repeat).
    """

    n: int
    v: int
    repeats: int
    v_mean: float
    v_sd: float

    def __post_init__(self):
        if self.n < 1 or self.repeats < 1:
            raise ValueError("n and repeats must be >= 1")
        if not 1 <= self.v <= self.n:
            raise ValueError("v must be in [1, n]")


@dataclass(frozen=True)
class HeapCurve:
    points: tuple[HeapPoint, ...]


def default_sample_sizes(corpus_size: int, points: int = 20,
                         smallest: int = 100) -> list[int]:
    """Log-spaced sample sizes between ``min(smallest, corpus_size)`` and the
    corpus size (deduplicated, so small corpora yield fewer points)."""
    if corpus_size < 1:
        raise ValueError("corpus must be non-empty")
    lo = min(smallest, corpus_size)
    raw = np.geomspace(lo, corpus_size, points)
    return sorted(set(int(round(v)) for v in raw))


def _encode_corpus(corpus: Sequence) -> np.ndarray:
    if isinstance(corpus, np.ndarray) and corpus.dtype.kind in "iu":
        return corpus
    codes: dict = {}
    return np.fromiter((codes.setdefault(item, len(codes)) for item in corpus),
                       dtype=np.int64, count=len(corpus))


def heap_curve(corpus: Sequence, sample_sizes: Sequence[int] | None = None,
               repeats: int = 5, seed: int = 0) -> HeapCurve:
    """Sample the vocabulary-growth curve of an indexed sequence corpus.

    ``corpus`` holds one hashable canonical sequence identifier per
    publication (rendered strings, :class:`ContinentSequence` values, or an
    integer array). For each sample size N, ``repeats`` uniform subsets of N
    publications are drawn without replacement and their distinct sequences
    counted. Each (size, repeat) pair runs on its own PCG64 generator seeded
    by ``SeedSequence((seed, size_index, repeat_index))``, so the curve is
    bit-reproducible and independent of execution order.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    codes = _encode_corpus(corpus)
    size = len(codes)
    if sample_sizes is None:
        sample_sizes = default_sample_sizes(size)
    points = []
    for size_index, n in enumerate(sample_sizes):
        if not 1 <= n <= size:
            raise ValueError(f"sample size {n} outside [1, {size}]")
        values = []
        for repeat_index in range(repeats):
            rng = np.random.Generator(np.random.PCG64(
                np.random.SeedSequence((seed, size_index, repeat_index))))
            indices = rng.choice(size, size=n, replace=False)
            values.append(int(np.unique(codes[indices]).size))
        arr = np.array(values, dtype=np.float64)
        sd = float(arr.std(ddof=1)) if repeats > 1 else 0.0
        points.append(HeapPoint(int(n), values[0], repeats, float(arr.mean()), sd))
    return HeapCurve(tuple(points))


def fit_heap(curve: HeapCurve) -> FitResult:
    """Fit V(N) as a power law of N; the exponent is the log-log slope."""
    if len(curve.points) < 3:
        raise InsufficientDataError(f"need >= 3 curve points, have {len(curve.points)}")
    sizes = np.array([p.n for p in curve.points], dtype=np.float64)
    means = np.array([p.v_mean for p in curve.points], dtype=np.float64)
    slope, stderr, intercept, r_squared = _ols_loglog(sizes, means)
    return FitResult(slope, stderr, intercept,
                     (int(sizes.min()), int(sizes.max())), r_squared,
                     len(curve.points), "ols")


# ---------------------------------------------------------------------------
# file formats

RANK_FILE_HEADER = "rank,sequence,count,percent"
HEAP_FILE_HEADER = "n,v,repeats,v_mean,v_sd"


def write_rank_file(table: RankTable, sink: str | Path | TextIO) -> None:
    """Write the ``rank,sequence,count,percent`` file (sequence quoted,
    percent with two decimals)."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as handle:
            write_rank_file(table, handle)
        return
    sink.write(RANK_FILE_HEADER + "\n")
    for entry in table.entries:
        text = render_sequence(entry.sequence)
        sink.write(f'{entry.rank},"{text}",{entry.count},{100.0 * entry.frequency:.2f}\n')


def read_rank_file(source: Union[str, Path, IO[str]]) -> RankTable:
    """Read a rank file back into a validated :class:`RankTable`.

    The file must carry the documented header and satisfy the rank-table
    invariants (dense ranks, non-increasing counts, canonical tie order);
    the percent column is redundant and ignored in favor of the counts.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as handle:
            return read_rank_file(handle)
    rows = csv.reader(source)
    try:
        header = next(rows)
    except StopIteration:
        raise EmptyInputError("rank file is empty") from None
    if [c.strip() for c in header] != RANK_FILE_HEADER.split(","):
        raise ValueError(f"expected header {RANK_FILE_HEADER!r}")
    parsed: list[tuple[int, ContinentSequence, int]] = []
    for row_no, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise ValueError(f"row {row_no}: expected 4 columns, got {len(row)}")
        rank, count = int(row[0]), int(row[2])
        parsed.append((rank, parse_sequence(row[1]), count))
    if not parsed:
        raise EmptyInputError("rank file has no entries")
    total = sum(count for _, _, count in parsed)
    entries = tuple(RankEntry(rank, sequence, count, count / total)
                    for rank, sequence, count in parsed)
    return RankTable(entries, total)


def write_heap_file(curve: HeapCurve, sink: str | Path | TextIO) -> None:
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as handle:
            write_heap_file(curve, handle)
        return
    sink.write(HEAP_FILE_HEADER + "\n")
    for p in curve.points:
        sink.write(f"{p.n},{p.v},{p.repeats},{p.v_mean:.6f},{p.v_sd:.6f}\n")


def read_heap_file(source: Union[str, Path, IO[str]]) -> HeapCurve:
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as handle:
            return read_heap_file(handle)
    rows = csv.reader(source)
    try:
        header = next(rows)
    except StopIteration:
        raise EmptyInputError("heap file is empty") from None
    if [c.strip() for c in header] != HEAP_FILE_HEADER.split(","):
        raise ValueError(f"expected header {HEAP_FILE_HEADER!r}")
    points = []
    for row in rows:
        if not row:
            continue
        points.append(HeapPoint(int(row[0]), int(row[1]), int(row[2]),
                                float(row[3]), float(row[4])))
    if not points:
        raise EmptyInputError("heap file has no points")
    return HeapCurve(tuple(points))


def format_fit_report(fit: FitResult, sensitivity: Sequence[FitResult] = ()) -> str:
    """Structured-text fit report: one ``key value`` line per field, plus one
    ``sensitivity_range`` line per swept window."""
    lines = [
        f"method {fit.method}",
        f"exponent {fit.exponent:.6f}",
        f"uncertainty {fit.uncertainty:.6f}",
        f"intercept {fit.intercept:.6f}",
        f"fit_range {fit.fit_range[0]:g} {fit.fit_range[1]:g}",
        f"points {fit.n_points}",
        f"r_squared {fit.r_squared:.6f}",
    ]
    for s in sensitivity:
        lines.append(
            f"sensitivity_range {s.fit_range[0]:g} {s.fit_range[1]:g} "
            f"exponent {s.exponent:.6f} uncertainty {s.uncertainty:.6f} "
            f"r_squared {s.r_squared:.6f}")
    return "\n".join(lines) + "\n"
