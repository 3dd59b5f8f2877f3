"""Word-type similarity networks: distance-1 edges over frequent types.

Nodes are the word types that occur at least ``min_freq`` times; an edge
joins two types at exactly edit distance one. Two construction strategies
are provided and must agree: neighbor generation enumerates every one-edit
variant of each node and looks it up, while bucketing compares only types
whose lengths differ by at most one. Neither evaluates the full quadratic
pair set.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from selfcite.corpus import Corpus
from selfcite.editdist import Alphabet, are_similar, edit_distance


@dataclass(frozen=True)
class TypeInfo:
    count: int
    graphemes: tuple[str, ...]


@dataclass(frozen=True)
class TypeTable:
    """Distinct word types with counts and grapheme sequences."""

    entries: dict[str, TypeInfo]

    @classmethod
    def from_corpus(cls, corpus: Corpus, alphabet: Alphabet | None = None) -> "TypeTable":
        counts = Counter()
        graphemes: dict[str, tuple[str, ...]] = {}
        for token in corpus.iter_tokens():
            counts[token.raw] += 1
            if token.raw not in graphemes:
                if token.graphemes is not None:
                    graphemes[token.raw] = token.graphemes
                elif alphabet is not None:
                    graphemes[token.raw] = alphabet.segment(token.raw)
                else:
                    raise ValueError(
                        f"token {token.raw!r} has no segmentation and no "
                        "alphabet was given"
                    )
        return cls({w: TypeInfo(counts[w], graphemes[w]) for w in counts})

    def total(self) -> int:
        return sum(info.count for info in self.entries.values())

    def grapheme_counts(self) -> Counter:
        """Occurrences of each grapheme across all tokens."""
        counts = Counter()
        for info in self.entries.values():
            for g in info.graphemes:
                counts[g] += info.count
        return counts


@dataclass(frozen=True)
class SimilarityGraph:
    min_freq: int
    adjacency: dict[str, tuple[str, ...]]

    @property
    def nodes(self) -> set[str]:
        return set(self.adjacency)

    def edges(self) -> set[tuple[str, str]]:
        return {
            (a, b) if a < b else (b, a)
            for a, nbrs in self.adjacency.items()
            for b in nbrs
        }

    def degree(self, node: str) -> int:
        return len(self.adjacency[node])


def _one_edit_variants(seq: tuple[str, ...], alphabet: Alphabet):
    """Every sequence reachable by one cost-1 edit: indel or similar swap."""
    for i in range(len(seq)):
        yield seq[:i] + seq[i + 1 :]
    for i in range(len(seq) + 1):
        for g in alphabet.graphemes:
            yield seq[:i] + (g,) + seq[i:]
    partners = alphabet.similar_partners
    for i, g in enumerate(seq):
        for p in partners[g]:
            yield seq[:i] + (p,) + seq[i + 1 :]


def _edges_by_neighbors(nodes: dict[str, tuple[str, ...]], alphabet: Alphabet):
    index = {seq: word for word, seq in nodes.items()}
    edges = set()
    for word, seq in nodes.items():
        for variant in _one_edit_variants(seq, alphabet):
            other = index.get(variant)
            if other is not None and other != word:
                edges.add((word, other) if word < other else (other, word))
    return edges


def _edges_by_buckets(nodes: dict[str, tuple[str, ...]], alphabet: Alphabet):
    by_length: dict[int, list[str]] = {}
    for word, seq in nodes.items():
        by_length.setdefault(len(seq), []).append(word)
    edges = set()
    for length, words in by_length.items():
        words = sorted(words)
        for bucket in (words, by_length.get(length + 1, ())):
            same = bucket is words
            for x, a in enumerate(words):
                others = bucket[x + 1 :] if same else bucket
                for b in others:
                    if edit_distance(nodes[a], nodes[b], alphabet, bound=1) == 1:
                        edges.add((a, b) if a < b else (b, a))
    return edges


def build_graph(
    table: TypeTable,
    alphabet: Alphabet,
    min_freq: int = 4,
    strategy: str = "neighbors",
) -> SimilarityGraph:
    """Build the distance-1 graph over types with count >= min_freq."""
    if not table.entries:
        raise ValueError("type table is empty")
    nodes = {
        word: info.graphemes
        for word, info in table.entries.items()
        if info.count >= min_freq
    }
    if strategy == "neighbors":
        edges = _edges_by_neighbors(nodes, alphabet)
    elif strategy == "buckets":
        edges = _edges_by_buckets(nodes, alphabet)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    adjacency: dict[str, list[str]] = {word: [] for word in nodes}
    for a, b in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    return SimilarityGraph(
        min_freq=min_freq,
        adjacency={w: tuple(sorted(ns)) for w, ns in adjacency.items()},
    )


def shortest_path(graph: SimilarityGraph, source: str, target: str) -> list[str] | None:
    """Minimum-edge path by breadth-first search, or None if disconnected.

    Neighbors expand in lexicographic order, so the returned path is
    deterministic.
    """
    for endpoint in (source, target):
        if endpoint not in graph.adjacency:
            raise ValueError(f"{endpoint!r} is not a node of the graph")
    if source == target:
        return [source]
    parents = {source: None}
    queue = deque([source])
    while queue:
        word = queue.popleft()
        for nbr in graph.adjacency[word]:
            if nbr in parents:
                continue
            parents[nbr] = word
            if nbr == target:
                path = [nbr]
                while parents[path[-1]] is not None:
                    path.append(parents[path[-1]])
                return path[::-1]
            queue.append(nbr)
    return None


def degree_coverage(graph: SimilarityGraph) -> float:
    """Fraction of nodes with at least one neighbor."""
    if not graph.adjacency:
        raise ValueError("graph has no nodes")
    connected = sum(1 for nbrs in graph.adjacency.values() if nbrs)
    return connected / len(graph.adjacency)


@dataclass(frozen=True)
class RatioRow:
    type_a: str
    type_b: str
    grapheme_a: str
    grapheme_b: str
    count_a: int
    count_b: int
    count_ratio: float
    grapheme_count_ratio: float


def edge_operation(
    a: tuple[str, ...], b: tuple[str, ...], alphabet: Alphabet
) -> str:
    """Label the single edit separating two distance-1 sequences."""
    if len(a) == len(b):
        for i, (x, y) in enumerate(zip(a, b)):
            if x != y:
                return f"substitute {x}~{y} @{i}"
        raise ValueError("sequences are identical")
    if len(a) < len(b):
        a, b = b, a
    for i in range(len(a)):
        if a[:i] + a[i + 1 :] == b:
            return f"indel {a[i]} @{i}"
    raise ValueError("sequences are not one edit apart")


def frequency_ratio_report(
    table: TypeTable, graph: SimilarityGraph, alphabet: Alphabet
) -> list[RatioRow]:
    """For each similar-substitution edge, compare type and grapheme counts.

    The more frequent type goes first; ``count_ratio`` is count_b/count_a
    and ``grapheme_count_ratio`` is the corpus-wide occurrence ratio of the
    substituted graphemes, oriented the same way.
    """
    grapheme_counts = table.grapheme_counts()
    rows = []
    for a, b in sorted(graph.edges()):
        seq_a = table.entries[a].graphemes
        seq_b = table.entries[b].graphemes
        if len(seq_a) != len(seq_b):
            continue
        diff = [(x, y) for x, y in zip(seq_a, seq_b) if x != y]
        if len(diff) != 1 or not are_similar(diff[0][0], diff[0][1], alphabet):
            continue
        count_a = table.entries[a].count
        count_b = table.entries[b].count
        if (count_b, a) > (count_a, b):
            a, b = b, a
            count_a, count_b = count_b, count_a
            diff = [(diff[0][1], diff[0][0])]
        ga, gb = diff[0]
        rows.append(
            RatioRow(
                type_a=a,
                type_b=b,
                grapheme_a=ga,
                grapheme_b=gb,
                count_a=count_a,
                count_b=count_b,
                count_ratio=count_b / count_a,
                grapheme_count_ratio=(
                    grapheme_counts[gb] / grapheme_counts[ga]
                    if grapheme_counts[ga]
                    else float("inf")
                ),
            )
        )
    return rows
