"""Windowed positional co-occurrence grids.

For every token at line n, position m, the engine inspects the candidate
positions {n-i, m+j} over a window of previous lines (plus the earlier part
of the same line) and counts how often the candidate word sits at exactly
the requested edit distance from the token being "written". Cells on row n
at or right of the writing position are excluded: only previously written
words are compared.

Counts are exact integers per cell; proportions are rational values formed
at render time. The engine deduplicates word-type pairs before computing
distances, so cost is driven by distinct pairs rather than pair instances,
and grids for several target distances can be computed in a single pass.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterator, Sequence

import numpy as np

from selfcite.corpus import Corpus
from selfcite.editdist import Alphabet, bounded_distance_ids


@dataclass(frozen=True)
class GridSpec:
    """Window shape and match predicate for a co-occurrence grid."""

    alphabet: Alphabet
    max_line_offset: int = 9
    max_pos_offset: int = 6
    target_distance: int = 0
    drop_line_edges: bool = False

    def __post_init__(self):
        if self.max_line_offset < 1:
            raise ValueError("max_line_offset must be >= 1")
        if self.max_pos_offset < 1:
            raise ValueError("max_pos_offset must be >= 1")
        if self.target_distance < 0:
            raise ValueError("target_distance must be >= 0")

    def iter_cells(self) -> Iterator[tuple[int, int]]:
        """All (line_offset, pos_offset) cells; row 0 keeps only j < 0."""
        for i in range(self.max_line_offset + 1):
            for j in range(-self.max_pos_offset, self.max_pos_offset + 1):
                if i == 0 and j >= 0:
                    continue
                yield (i, j)


@dataclass
class GridCell:
    pair_count: int = 0
    match_count: int = 0

    @property
    def proportion(self) -> float | None:
        """match/pair as a float, or None when no pair was observed."""
        if self.pair_count == 0:
            return None
        return self.match_count / self.pair_count


@dataclass(frozen=True)
class CooccurrenceGrid:
    spec: GridSpec
    cells: dict[tuple[int, int], GridCell]

    def cell(self, line_offset: int, pos_offset: int) -> GridCell:
        return self.cells[(line_offset, pos_offset)]

    def proportion(self, line_offset: int, pos_offset: int) -> float | None:
        return self.cells[(line_offset, pos_offset)].proportion

    def row_mean(self, line_offset: int) -> float | None:
        """Unweighted mean of the defined cell proportions in one row."""
        values = [c.proportion for (i, _), c in self.cells.items()
                  if i == line_offset and c.pair_count > 0]
        if not values:
            return None
        return sum(values) / len(values)


def _corpus_matrices(corpus: Corpus, alphabet: Alphabet):
    """Pad the corpus into (type-id matrix, edge mask, id sequences)."""
    type_ids: dict[tuple[int, ...], int] = {}
    rows: list[list[int]] = []
    for line in corpus.lines:
        row = []
        for token in line.tokens:
            graphemes = token.graphemes or alphabet.segment(token.raw)
            encoded = alphabet.encode(graphemes)
            tid = type_ids.setdefault(encoded, len(type_ids))
            row.append(tid)
        rows.append(row)
    width = max(len(r) for r in rows)
    height = len(rows)
    matrix = np.full((height, width), -1, dtype=np.int64)
    edges = np.zeros((height, width), dtype=bool)
    for n, row in enumerate(rows):
        if row:
            matrix[n, : len(row)] = row
            edges[n, 0] = True
            edges[n, len(row) - 1] = True
    seqs = [None] * len(type_ids)
    for seq, tid in type_ids.items():
        seqs[tid] = seq
    return matrix, edges, seqs


def _cell_keys(matrix, edges, n_types: int, i: int, j: int, drop_edges: bool):
    """Canonical (lo*n_types + hi) pair keys for one window cell."""
    height, width = matrix.shape
    if i >= height or abs(j) >= width:
        return np.empty(0, dtype=np.int64)
    if j >= 0:
        target = matrix[i:, : width - j]
        cand = matrix[: height - i, j:]
        target_edge = edges[i:, : width - j]
        cand_edge = edges[: height - i, j:]
    else:
        target = matrix[i:, -j:]
        cand = matrix[: height - i, : width + j]
        target_edge = edges[i:, -j:]
        cand_edge = edges[: height - i, : width + j]
    valid = (target >= 0) & (cand >= 0)
    if drop_edges:
        valid &= ~target_edge & ~cand_edge
    a = target[valid]
    b = cand[valid]
    return np.minimum(a, b) * n_types + np.maximum(a, b)


def _distance_codes(keys, seqs, n_types: int, alphabet: Alphabet, bound: int):
    """Distance code per distinct pair key; bound + 1 means "exceeds"."""
    exceeds = bound + 1
    lo_ids = keys // n_types
    hi_ids = keys % n_types
    lengths = np.fromiter((len(s) for s in seqs), dtype=np.int64, count=len(seqs))
    codes = np.full(len(keys), exceeds, dtype=np.int64)
    codes[lo_ids == hi_ids] = 0
    indel = alphabet.indel_cost
    # Presence-bitmask lower bound: a grapheme occurring in only one word
    # costs at least half an edit to reconcile, so popcount(xor) > 2*bound
    # proves the distance exceeds the bound. Folding ids mod 64 keeps the
    # bound valid for any inventory size.
    masks = np.zeros(len(seqs), dtype=np.uint64)
    for tid, seq in enumerate(seqs):
        mask = 0
        for g in seq:
            mask |= 1 << (g & 63)
        masks[tid] = mask
    survivors = (
        (lo_ids != hi_ids)
        & (np.abs(lengths[lo_ids] - lengths[hi_ids]) * indel <= bound)
        & (np.bitwise_count(masks[lo_ids] ^ masks[hi_ids]) <= 2 * bound)
    )
    candidates = np.flatnonzero(survivors)
    sim = alphabet.similar_id_pairs
    sub_sim = alphabet.similar_substitution_cost
    sub_dis = alphabet.dissimilar_substitution_cost
    out = np.empty(len(candidates), dtype=np.int64)
    lo_list = lo_ids[candidates].tolist()
    hi_list = hi_ids[candidates].tolist()
    for pos, (a, b) in enumerate(zip(lo_list, hi_list)):
        d = bounded_distance_ids(seqs[a], seqs[b], bound, sim, indel, sub_sim, sub_dis)
        out[pos] = exceeds if d is None else d
    codes[candidates] = out
    return codes


def compute_grids(
    corpus: Corpus,
    spec: GridSpec,
    distances: Sequence[int],
    threads: int = 1,
) -> dict[int, CooccurrenceGrid]:
    """Grids for several target distances in one pass over the corpus.

    Cell counts equal those of independent single-distance runs; computing
    them together only shares the pair enumeration and distance work.
    """
    if not corpus.lines:
        raise ValueError("corpus has no lines")
    if not distances:
        raise ValueError("need at least one target distance")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    matrix, edges, seqs = _corpus_matrices(corpus, spec.alphabet)
    n_types = max(len(seqs), 1)
    cells = list(spec.iter_cells())

    def keys_for(cell):
        return _cell_keys(matrix, edges, n_types, cell[0], cell[1], spec.drop_line_edges)

    if threads > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_cell = list(pool.map(keys_for, cells))
    else:
        per_cell = [keys_for(cell) for cell in cells]

    bound = max(distances) + 1
    nonempty = [k for k in per_cell if len(k)]
    all_keys = (
        np.unique(np.concatenate(nonempty)) if nonempty else np.empty(0, dtype=np.int64)
    )
    codes = _distance_codes(all_keys, seqs, n_types, spec.alphabet, bound)

    grids = {
        d: {cell: GridCell() for cell in cells} for d in distances
    }
    for cell, keys in zip(cells, per_cell):
        if not len(keys):
            continue
        cell_codes = codes[np.searchsorted(all_keys, keys)]
        for d in distances:
            gc = grids[d][cell]
            gc.pair_count = int(len(keys))
            gc.match_count = int(np.count_nonzero(cell_codes == d))
    return {
        d: CooccurrenceGrid(replace(spec, target_distance=d), grids[d])
        for d in distances
    }


def compute_grid(corpus: Corpus, spec: GridSpec, threads: int = 1) -> CooccurrenceGrid:
    """The co-occurrence grid for the spec's target distance."""
    return compute_grids(corpus, spec, [spec.target_distance], threads)[
        spec.target_distance
    ]


def summarize_decay(grid: CooccurrenceGrid) -> dict[int, float]:
    """Mean proportion per line-offset row, excluding row 0.

    Input must have data in at least four rows; the result supports the
    check that proportions fall off with line distance.
    """
    means = {}
    for i in range(1, grid.spec.max_line_offset + 1):
        mean = grid.row_mean(i)
        if mean is not None:
            means[i] = mean
    if len(means) < 4:
        raise ValueError("grid needs data in at least 4 rows to summarize decay")
    return means


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def format_percent(match_count: int, pair_count: int) -> str:
    """match/pair as a percentage, two decimals, exact half-up rounding."""
    hundredths = (20_000 * match_count + pair_count) // (2 * pair_count)
    return f"{hundredths // 100}.{hundredths % 100:02d}"


def _column_labels(spec: GridSpec) -> list[str]:
    labels = []
    for j in range(-spec.max_pos_offset, spec.max_pos_offset + 1):
        labels.append("m" if j == 0 else f"m{j:+d}")
    return labels


def _row_label(i: int) -> str:
    return "n" if i == 0 else f"n-{i}"


def _table_rows(grid: CooccurrenceGrid) -> list[list[str]]:
    spec = grid.spec
    rows = []
    for i in range(spec.max_line_offset, -1, -1):
        row = [_row_label(i)]
        for j in range(-spec.max_pos_offset, spec.max_pos_offset + 1):
            if i == 0 and j == 0:
                row.append("x")
            elif (i, j) not in grid.cells:
                row.append("")
            else:
                cell = grid.cells[(i, j)]
                row.append(
                    format_percent(cell.match_count, cell.pair_count)
                    if cell.pair_count
                    else ""
                )
        rows.append(row)
    return rows


def _render_csv(grid: CooccurrenceGrid) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + _column_labels(grid.spec))
    writer.writerows(_table_rows(grid))
    return buf.getvalue().encode("utf-8")


def _render_markdown(grid: CooccurrenceGrid) -> bytes:
    header = [""] + _column_labels(grid.spec)
    lines = ["| " + " | ".join(header) + " |",
             "|" + "---|" * len(header)]
    for row in _table_rows(grid):
        lines.append("| " + " | ".join(row) + " |")
    return ("\n".join(lines) + "\n").encode("utf-8")


_SVG_CELL_W = 46
_SVG_CELL_H = 22
_SVG_LEFT = 44
_SVG_TOP = 26


def _render_svg(grid: CooccurrenceGrid) -> bytes:
    spec = grid.spec
    cols = 2 * spec.max_pos_offset + 1
    rows = spec.max_line_offset + 1
    width = _SVG_LEFT + cols * _SVG_CELL_W + 8
    height = _SVG_TOP + rows * _SVG_CELL_H + 8
    proportions = [c.proportion for c in grid.cells.values() if c.pair_count]
    vmax = max(proportions) if proportions else 0.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
        "patternUnits=\"userSpaceOnUse\">"
        "<path d=\"M0,6 L6,0\" stroke=\"#666\" stroke-width=\"1\"/></pattern></defs>",
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for c, label in enumerate(_column_labels(spec)):
        x = _SVG_LEFT + c * _SVG_CELL_W + _SVG_CELL_W // 2
        parts.append(
            f'<text x="{x}" y="{_SVG_TOP - 8}" font-size="10" '
            f'text-anchor="middle" font-family="monospace">{label}</text>'
        )
    for r, i in enumerate(range(spec.max_line_offset, -1, -1)):
        y = _SVG_TOP + r * _SVG_CELL_H
        parts.append(
            f'<text x="{_SVG_LEFT - 6}" y="{y + 15}" font-size="10" '
            f'text-anchor="end" font-family="monospace">{_row_label(i)}</text>'
        )
        for c, j in enumerate(range(-spec.max_pos_offset, spec.max_pos_offset + 1)):
            x = _SVG_LEFT + c * _SVG_CELL_W
            if i == 0 and j == 0:
                fill = "url(#hatch)"
                title = "writing position"
            elif (i, j) not in grid.cells or not grid.cells[(i, j)].pair_count:
                fill = "white"
                title = ""
            else:
                cell = grid.cells[(i, j)]
                shade = 0.0 if vmax == 0 else cell.proportion / vmax
                # monochrome ramp, darker = higher proportion
                level = 255 - round(200 * shade)
                fill = f"rgb({level},{level},{level})"
                title = f"{format_percent(cell.match_count, cell.pair_count)}%"
            rect = (
                f'<rect x="{x}" y="{y}" width="{_SVG_CELL_W}" '
                f'height="{_SVG_CELL_H}" fill="{fill}" stroke="#999"/>'
            )
            if title:
                rect = rect[:-2] + f"><title>{title}</title></rect>"
            parts.append(rect)
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def render_grid(grid: CooccurrenceGrid, format: str) -> bytes:
    """Serialize a grid as "csv", "markdown", or "svg" bytes.

    Output is a pure function of the cell counts, so identical inputs give
    byte-identical bytes.
    """
    if format == "csv":
        return _render_csv(grid)
    if format == "markdown":
        return _render_markdown(grid)
    if format == "svg":
        return _render_svg(grid)
    raise ValueError(f"unknown grid format {format!r}")
