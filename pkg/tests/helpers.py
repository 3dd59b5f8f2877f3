"""Independent reference implementations used to check the fast paths.

These stay deliberately naive: the recursive distance explores every edit
at every step, and the grid recount walks every token pair with nested
loops. Neither shares code with the library internals it checks. The
hand-enumerated grid cases live here too, shared between the unit tests
and the acceptance suite.
"""

from __future__ import annotations

from selfcite.corpus import Corpus
from selfcite.editdist import Alphabet, are_similar


def naive_distance(a, b, alphabet: Alphabet) -> int:
    """Exponential-time weighted edit distance over grapheme sequences."""
    if isinstance(a, str):
        a = alphabet.segment(a)
    if isinstance(b, str):
        b = alphabet.segment(b)
    indel = alphabet.indel_cost

    def rec(x, y):
        if not x:
            return len(y) * indel
        if not y:
            return len(x) * indel
        best = rec(x[1:], y) + indel
        via_insert = rec(x, y[1:]) + indel
        if via_insert < best:
            best = via_insert
        if x[0] == y[0]:
            sub = 0
        elif are_similar(x[0], y[0], alphabet):
            sub = alphabet.similar_substitution_cost
        else:
            sub = alphabet.dissimilar_substitution_cost
        via_sub = rec(x[1:], y[1:]) + sub
        if via_sub < best:
            best = via_sub
        return best

    return rec(tuple(a), tuple(b))


def brute_force_grid_counts(
    corpus: Corpus,
    alphabet: Alphabet,
    max_line_offset: int,
    max_pos_offset: int,
    target_distance: int,
    drop_line_edges: bool = False,
) -> dict[tuple[int, int], tuple[int, int]]:
    """Recount every windowed pair with plain nested loops.

    Returns {(line_offset, pos_offset): (pair_count, match_count)} using the
    naive recursive distance for the match test. Only sensible for small
    corpora.
    """
    lines = [[tok.graphemes or alphabet.segment(tok.raw) for tok in line.tokens]
             for line in corpus.lines]
    counts: dict[tuple[int, int], list[int]] = {}
    for i in range(max_line_offset + 1):
        for j in range(-max_pos_offset, max_pos_offset + 1):
            if i == 0 and j >= 0:
                continue
            counts[(i, j)] = [0, 0]
    for n, line in enumerate(lines):
        for m, word in enumerate(line):
            if drop_line_edges and (m == 0 or m == len(line) - 1):
                continue
            for i in range(max_line_offset + 1):
                if i > n:
                    break
                other = lines[n - i]
                for j in range(-max_pos_offset, max_pos_offset + 1):
                    if i == 0 and j >= 0:
                        continue
                    p = m + j
                    if p < 0 or p >= len(other):
                        continue
                    if drop_line_edges and (p == 0 or p == len(other) - 1):
                        continue
                    cell = counts[(i, j)]
                    cell[0] += 1
                    if naive_distance(word, other[p], alphabet) == target_distance:
                        cell[1] += 1
    return {k: (v[0], v[1]) for k, v in counts.items()}


# ---------------------------------------------------------------------------
# hand-enumerated toy grids: expected values worked out cell by cell by hand
# ---------------------------------------------------------------------------

HAND_ALPHABETS = {
    "xyz": Alphabet.single_characters("xyz"),
    "a": Alphabet.single_characters("a"),
    "pqrst": Alphabet.single_characters("pqrst"),
    "abc7": Alphabet.single_characters("abcdxyz"),
    "cho": Alphabet(
        graphemes=("ch", "a", "o", "l", "r"),
        similarity_groups=(frozenset({"a", "o"}),),
        dissimilar_substitution_cost=2,
    ),
}

# (name, token lines, alphabet key, grid kwargs, {(i, j): (pairs, matches)})
HAND_GRID_CASES = [
    (
        "two_lines_d0",
        [["x", "y"], ["x", "z"]],
        "xyz",
        dict(max_line_offset=1, max_pos_offset=1, target_distance=0),
        {(0, -1): (2, 0), (1, -1): (1, 0), (1, 0): (2, 1), (1, 1): (1, 0)},
    ),
    (
        "saturated_repeats_d0",
        [["a", "a"], ["a", "a"], ["a", "a"]],
        "a",
        dict(max_line_offset=2, max_pos_offset=1, target_distance=0),
        {
            (0, -1): (3, 3),
            (1, -1): (2, 2), (1, 0): (4, 4), (1, 1): (2, 2),
            (2, -1): (1, 1), (2, 0): (2, 2), (2, 1): (1, 1),
        },
    ),
    (
        "grapheme_distance1",
        [["chol", "chor"], ["chal", "ol"]],
        "cho",
        dict(max_line_offset=1, max_pos_offset=1, target_distance=1),
        {(0, -1): (2, 0), (1, -1): (1, 1), (1, 0): (2, 1), (1, 1): (1, 0)},
    ),
    (
        "drop_line_edges",
        [["p", "q", "r", "s"], ["q", "q", "t"]],
        "pqrst",
        dict(max_line_offset=1, max_pos_offset=2, target_distance=0,
             drop_line_edges=True),
        {
            (0, -2): (0, 0), (0, -1): (1, 0),
            (1, -2): (0, 0), (1, -1): (0, 0), (1, 0): (1, 1),
            (1, 1): (1, 0), (1, 2): (0, 0),
        },
    ),
    (
        "exact_distance2_not_at_most",
        [["abc", "abd"], ["abc", "xyc", "azc"]],
        "abc7",
        dict(max_line_offset=1, max_pos_offset=1, target_distance=2),
        {(0, -1): (3, 2), (1, -1): (2, 2), (1, 0): (2, 0), (1, 1): (1, 0)},
    ),
]
