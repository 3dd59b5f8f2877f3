"""Grapheme alphabets with similarity classes and a weighted edit distance.

An :class:`Alphabet` declares the grapheme inventory (multi-character
surface forms such as "ch" are allowed), groups of graphemes that count as
interchangeable, and the three edit costs. Distances are computed over
grapheme sequences, not raw characters, so deleting "ch" from "chol" is a
single edit.

Cost model: insertion and deletion cost ``indel_cost`` each; substituting a
grapheme by a similar one costs ``similar_substitution_cost``; substituting
by a dissimilar one costs ``dissimilar_substitution_cost``. Configurations
where a dissimilar substitution is dearer than a delete-plus-insert are
rejected, which keeps the per-symbol costs a metric and the sequence
distance well behaved.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class SegmentationError(ValueError):
    """A token cannot be split into inventory graphemes."""

    def __init__(self, token: str, position: int):
        self.token = token
        self.position = position
        super().__init__(
            f"cannot segment token {token!r}: no grapheme of the alphabet "
            f"matches at character {position} ({token[position]!r})"
        )


@dataclass(frozen=True)
class Alphabet:
    """Grapheme inventory, similarity classes, and edit costs."""

    graphemes: tuple[str, ...]
    similarity_groups: tuple[frozenset[str], ...] = ()
    similar_substitution_cost: int = 1
    dissimilar_substitution_cost: int = 2
    indel_cost: int = 1

    def __post_init__(self):
        object.__setattr__(self, "graphemes", tuple(self.graphemes))
        object.__setattr__(
            self,
            "similarity_groups",
            tuple(frozenset(g) for g in self.similarity_groups),
        )
        if not self.graphemes:
            raise ValueError("alphabet needs at least one grapheme")
        if any(not g for g in self.graphemes):
            raise ValueError("empty grapheme in inventory")
        if len(set(self.graphemes)) != len(self.graphemes):
            raise ValueError("duplicate graphemes in inventory")
        inventory = set(self.graphemes)
        for group in self.similarity_groups:
            unknown = group - inventory
            if unknown:
                raise ValueError(
                    f"similarity group {sorted(group)} contains graphemes "
                    f"outside the inventory: {sorted(unknown)}"
                )
        for name in (
            "similar_substitution_cost",
            "dissimilar_substitution_cost",
            "indel_cost",
        ):
            cost = getattr(self, name)
            if not isinstance(cost, int) or cost < 1:
                raise ValueError(f"{name} must be a positive integer, got {cost!r}")
        if self.similar_substitution_cost > self.dissimilar_substitution_cost:
            raise ValueError(
                "similar_substitution_cost must not exceed "
                "dissimilar_substitution_cost"
            )
        if self.dissimilar_substitution_cost > 2 * self.indel_cost:
            # Otherwise substitution is never chosen and distances silently
            # degenerate to pure indel counts.
            raise ValueError(
                "dissimilar_substitution_cost must be at most twice indel_cost"
            )

    @classmethod
    def single_characters(
        cls,
        chars: Iterable[str],
        *,
        similarity_groups: Iterable[Iterable[str]] = (),
        similar_substitution_cost: int = 1,
        dissimilar_substitution_cost: int = 1,
        indel_cost: int = 1,
    ) -> "Alphabet":
        """Alphabet of single characters, by default with unit costs.

        This is the profile used for plain-language comparison corpora,
        where one changed letter counts as one edit.
        """
        inventory = sorted({c for c in chars})
        return cls(
            graphemes=tuple(inventory),
            similarity_groups=tuple(frozenset(g) for g in similarity_groups),
            similar_substitution_cost=similar_substitution_cost,
            dissimilar_substitution_cost=dissimilar_substitution_cost,
            indel_cost=indel_cost,
        )

    # -- derived lookup structures (cached, not part of equality) --

    @cached_property
    def _ids(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.graphemes)}

    @cached_property
    def _segment_candidates(self) -> dict[str, tuple[str, ...]]:
        # Longest-match-first candidates keyed by first character.
        by_first: dict[str, list[str]] = {}
        for g in self.graphemes:
            by_first.setdefault(g[0], []).append(g)
        return {
            c: tuple(sorted(gs, key=len, reverse=True)) for c, gs in by_first.items()
        }

    @cached_property
    def similar_id_pairs(self) -> frozenset[tuple[int, int]]:
        """Canonical (lo, hi) id pairs of distinct similar graphemes."""
        pairs = set()
        ids = self._ids
        for group in self.similarity_groups:
            members = sorted(ids[g] for g in group)
            for i, a in enumerate(members):
                for b in members[i + 1 :]:
                    pairs.add((a, b))
        return frozenset(pairs)

    @cached_property
    def similar_partners(self) -> dict[str, tuple[str, ...]]:
        """For each grapheme, the distinct similar graphemes, sorted."""
        partners: dict[str, set[str]] = {g: set() for g in self.graphemes}
        for group in self.similarity_groups:
            for g in group:
                partners[g].update(group - {g})
        return {g: tuple(sorted(p)) for g, p in partners.items()}

    def __contains__(self, grapheme: str) -> bool:
        return grapheme in self._ids

    def grapheme_id(self, grapheme: str) -> int:
        try:
            return self._ids[grapheme]
        except KeyError:
            raise ValueError(f"unknown grapheme {grapheme!r}") from None

    def encode(self, graphemes: Sequence[str]) -> tuple[int, ...]:
        """Map a grapheme sequence to inventory ids, validating membership."""
        ids = self._ids
        try:
            return tuple(ids[g] for g in graphemes)
        except KeyError as exc:
            raise ValueError(f"unknown grapheme {exc.args[0]!r}") from None

    def segment(self, raw: str) -> tuple[str, ...]:
        """Split a raw token into graphemes, longest match first.

        Deterministic left-to-right scan: at each position the longest
        inventory grapheme that matches wins, so "ch" beats "c" in "chol".
        Raises :class:`SegmentationError` when no grapheme matches.
        """
        out: list[str] = []
        pos = 0
        n = len(raw)
        candidates = self._segment_candidates
        while pos < n:
            for g in candidates.get(raw[pos], ()):
                if raw.startswith(g, pos):
                    out.append(g)
                    pos += len(g)
                    break
            else:
                raise SegmentationError(raw, pos)
        return tuple(out)


def are_similar(a: str, b: str, alphabet: Alphabet) -> bool:
    """True iff the graphemes are equal or share a similarity group."""
    ia = alphabet.grapheme_id(a)
    ib = alphabet.grapheme_id(b)
    if ia == ib:
        return True
    pair = (ia, ib) if ia < ib else (ib, ia)
    return pair in alphabet.similar_id_pairs


def bounded_distance_ids(
    a: tuple[int, ...],
    b: tuple[int, ...],
    bound: int,
    similar_pairs: frozenset[tuple[int, int]],
    indel: int,
    sub_similar: int,
    sub_dissimilar: int,
) -> int | None:
    """Exact weighted distance between id sequences if <= bound, else None.

    Core routine shared with the co-occurrence engine; callers are expected
    to have validated the ids. Strips common affixes first (safe because the
    per-symbol costs form a metric) and runs a banded dynamic program on the
    remainder.
    """
    if a == b:
        return 0
    la = len(a)
    lb = len(b)
    if abs(la - lb) * indel > bound:
        return None
    s = 0
    while s < la and s < lb and a[s] == b[s]:
        s += 1
    e = 0
    while e < la - s and e < lb - s and a[la - 1 - e] == b[lb - 1 - e]:
        e += 1
    a = a[s : la - e]
    b = b[s : lb - e]
    la -= s + e
    lb -= s + e
    if la == 0 or lb == 0:
        value = max(la, lb) * indel
        return value if value <= bound else None
    if la == 1 and lb == 1:
        x = a[0]
        y = b[0]
        pair = (x, y) if x < y else (y, x)
        sub = sub_similar if pair in similar_pairs else sub_dissimilar
        value = min(sub, 2 * indel)
        return value if value <= bound else None
    # Banded DP: cells with |i - j| beyond the band cost more than the bound.
    half = bound // indel
    inf = bound + 1
    prev = [j * indel if j <= half else inf for j in range(lb + 1)]
    for i in range(1, la + 1):
        lo = i - half if i - half > 1 else 1
        hi = i + half if i + half < lb else lb
        cur = [inf] * (lb + 1)
        if lo == 1:
            cur[0] = i * indel if i <= half else inf
        ai = a[i - 1]
        best_row = inf
        for j in range(lo, hi + 1):
            bj = b[j - 1]
            if ai == bj:
                cost = prev[j - 1]
            else:
                pair = (ai, bj) if ai < bj else (bj, ai)
                sub = sub_similar if pair in similar_pairs else sub_dissimilar
                cost = prev[j - 1] + sub
            up = prev[j] + indel
            if up < cost:
                cost = up
            left = cur[j - 1] + indel
            if left < cost:
                cost = left
            if cost < inf:
                cur[j] = cost
                if cost < best_row:
                    best_row = cost
        if best_row > bound:
            return None
        prev = cur
    value = prev[lb]
    return value if value <= bound else None


def edit_distance(
    a: Sequence[str] | str,
    b: Sequence[str] | str,
    alphabet: Alphabet,
    bound: int | None = None,
) -> int | None:
    """Minimum total edit cost between two grapheme sequences.

    Arguments may be grapheme sequences or raw strings; raw strings are
    segmented against the alphabet first. With ``bound`` set, the value is
    exact whenever the true distance is at most ``bound`` and ``None``
    (meaning "exceeds the bound") otherwise.
    """
    if isinstance(a, str):
        a = alphabet.segment(a)
    if isinstance(b, str):
        b = alphabet.segment(b)
    ea = alphabet.encode(a)
    eb = alphabet.encode(b)
    exhaustive = bound is None
    if exhaustive:
        bound = (len(ea) + len(eb)) * alphabet.indel_cost
    result = bounded_distance_ids(
        ea,
        eb,
        bound,
        alphabet.similar_id_pairs,
        alphabet.indel_cost,
        alphabet.similar_substitution_cost,
        alphabet.dissimilar_substitution_cost,
    )
    assert not (exhaustive and result is None)
    return result
