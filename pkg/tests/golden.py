"""Frozen golden fixtures shared across the suite.

``TOP20`` is the reference top-20 sequence distribution (rendered sequence,
percent of all records, count when scaled to 10,000 records). The worked
mapping examples pin the end-to-end canonicalization of eleven publication
layouts, including the twelve-author, six-country, four-continent case.
"""

from __future__ import annotations

TOP20 = (
    ("North America (1)", 26.51, 2651),
    ("Europe (1)", 24.59, 2459),
    ("Asia (1)", 17.06, 1706),
    ("Europe (2)", 4.95, 495),
    ("Europe (1), North America (1)", 4.56, 456),
    ("Asia (1), North America (1)", 3.66, 366),
    ("Australia & Oceania (1)", 2.08, 208),
    ("Asia (1), Europe (1)", 1.99, 199),
    ("Asia (2)", 1.26, 126),
    ("Europe (2), North America (1)", 1.09, 109),
    ("Europe (3)", 1.02, 102),
    ("North America (2)", 0.98, 98),
    ("South America (1)", 0.77, 77),
    ("Australia & Oceania (1), Europe (1)", 0.58, 58),
    ("Asia (1), Europe (1), North America (1)", 0.56, 56),
    ("Asia (1), Australia & Oceania (1)", 0.50, 50),
    ("Australia & Oceania (1), North America (1)", 0.47, 47),
    ("Asia (1), Europe (2)", 0.39, 39),
    ("Europe (1), South America (1)", 0.36, 36),
    ("North America (1), South America (1)", 0.36, 36),
)

# scaled to 10,000 records the top-20 cover 9,374; the remaining 626 go to
# filler sequences that must all rank below 20 (every count < 36)
FILLER_TOTAL = 626
FILLER_COUNTS = tuple([35] * 17 + [31])
FILLER_SEQUENCES = tuple(f"Africa ({n})" for n in range(1, 19))
assert sum(FILLER_COUNTS) == FILLER_TOTAL
assert sum(count for _, _, count in TOP20) + FILLER_TOTAL == 10_000

#: Expected first 21 lines of the rank file written for the fixture corpus.
GOLDEN_RANK_LINES = ("rank,sequence,count,percent",) + tuple(
    f'{rank},"{text}",{count},{pct:.2f}'
    for rank, (text, pct, count) in enumerate(TOP20, start=1))


def _large_team():
    # 49 authors across 12 countries on 5 continents
    europe8 = ("Austria", "France", "Germany", "Italy",
               "Netherlands", "Poland", "Spain", "United Kingdom")
    countries = ("South Africa", "China") + europe8 + ("United States", "Brazil")
    layout = [[c] for c in countries]
    layout += [[countries[i % len(countries)]] for i in range(49 - len(countries))]
    return layout


#: (case id, per-author country label lists, expected sequence, expected n_c)
WORKED_EXAMPLES = (
    ("twelve-authors-four-continents",
     [["United Kingdom"], ["United Kingdom"], ["United Kingdom", "Ecuador"],
      ["United Kingdom", "United States", "United States"],
      ["Hong Kong SAR"], ["Hong Kong SAR"], ["United States"],
      ["United States"], ["United States"], ["China"],
      ["Italy", "United States"], ["Hong Kong SAR"]],
     "Asia (2), Europe (2), North America (1), South America (1)", 6),
    ("large-team-twelve-countries", _large_team(),
     "Africa (1), Asia (1), Europe (8), North America (1), South America (1)", 12),
    ("five-authors-one-country", [["Poland"]] * 5, "Europe (1)", 1),
    ("four-authors-two-european-countries",
     [["Poland"], ["Poland"], ["Germany"], ["Germany"]], "Europe (2)", 2),
    ("three-authors-two-european-countries",
     [["Germany"], ["Poland"], ["Poland"]], "Europe (2)", 2),
    ("four-authors-three-european-countries",
     [["Poland"], ["Czechia"], ["Slovakia"], ["Poland"]], "Europe (3)", 3),
    ("bilateral-europe-north-america",
     [["Poland"], ["Poland"], ["United States"], ["United States"]],
     "Europe (1), North America (1)", 2),
    ("four-authors-three-countries-two-continents",
     [["France"], ["Germany"], ["United States"], ["France"]],
     "Europe (2), North America (1)", 3),
    ("three-authors-three-countries-a",
     [["Spain"], ["Italy"], ["Canada"]], "Europe (2), North America (1)", 3),
    ("three-authors-three-countries-b",
     [["Poland"], ["Germany"], ["United States"]],
     "Europe (2), North America (1)", 3),
    ("bilateral-europe-south-america",
     [["Portugal"], ["Brazil"]], "Europe (1), South America (1)", 2),
)


def fixture_sequences() -> list[str]:
    """The 10,000 rendered sequences of the rank fixture corpus, in a fixed
    interleaved order (counting must not depend on input order)."""
    out = []
    for text, _, count in TOP20:
        out.extend([text] * count)
    for text, count in zip(FILLER_SEQUENCES, FILLER_COUNTS):
        out.extend([text] * count)
    # deterministic shuffle so the fixture is not pre-grouped
    import random
    random.Random(20_000).shuffle(out)
    return out
