"""Self-citation text generation and its statistical signature check.

The generator writes tokens one at a time. With ``copy_probability`` it
copies a recently written word (biased toward the same line and the same
position in lines just above) and applies a small number of one-cost edits;
otherwise it emits a seed word. Line- and paragraph-position effects mirror
the ones observed in the analyzed corpora: paragraph-opening words gain a
gallows glyph, line-opening words gain a prefix glyph, and the second word
of a line sometimes repeats the first word with that freshly added glyph
stripped again.

``validate_signature`` measures whether a corpus shows the tell-tale
signature of such a process: identical/similar words clustering near the
writing position, proportions decaying over line distance, and immediate
word repetition not being avoided.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from selfcite.corpus import Corpus, Line, Locus, Token, normalize
from selfcite.cooccur import GridSpec, compute_grids
from selfcite.editdist import Alphabet

_PAGE_CAPACITY_LINES = 25

MUTATION_KINDS = ("insert", "delete", "substitute_similar")

#: Source-selection weight families, keyed by name so parameter files can
#: pick one; each maps (line_offset, candidate_pos, current_pos) -> weight.
SOURCE_BIAS_KERNELS = {
    "inverse_distance": lambda i, p, m: 1.0 / ((1 + i) * (1 + abs(p - m))),
    "uniform": lambda i, p, m: 1.0,
}


def _distribution(pairs) -> tuple[tuple[int, float], ...]:
    items = tuple(sorted((int(k), float(v)) for k, v in pairs))
    if not items:
        raise ValueError("distribution must not be empty")
    if any(v < 0 for _, v in items):
        raise ValueError("distribution probabilities must be nonnegative")
    total = sum(v for _, v in items)
    if abs(total - 1.0) > 1e-6:
        raise ValueError(f"distribution must sum to 1, got {total}")
    return items


@dataclass(frozen=True)
class GeneratorParams:
    """Full parameterization of the generation process; seedable."""

    seed_words: tuple[str, ...] = ("daiin", "ol", "chedy")
    copy_probability: float = 0.9
    mutation_count_distribution: tuple[tuple[int, float], ...] = ((0, 0.5), (1, 0.3), (2, 0.2))
    mutation_kind_weights: tuple[tuple[str, float], ...] = (
        ("insert", 0.35), ("delete", 0.35), ("substitute_similar", 0.3),
    )
    source_window_lines: int = 10
    source_position_bias: str = "inverse_distance"
    line_length_distribution: tuple[tuple[int, float], ...] = ((7, 0.5), (9, 0.5))
    paragraph_length_distribution: tuple[tuple[int, float], ...] = ((4, 0.5), (6, 0.5))
    line_initial_prefix_probability: float = 0.4
    prefix_graphemes: tuple[str, ...] = ("y", "o", "s", "d")
    paragraph_initial_gallows_probability: float = 0.8
    gallows_graphemes: tuple[str, ...] = ("k", "t", "p", "f")
    second_word_strip_probability: float = 0.05
    line_final_glyph_probability: float = 0.0
    line_final_glyphs: tuple[str, ...] = ("m",)
    excluded_graphemes: tuple[str, ...] = ("*",)
    rng_seed: int = 1
    target_token_count: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "seed_words", tuple(self.seed_words))
        object.__setattr__(
            self, "mutation_count_distribution",
            _distribution(self.mutation_count_distribution),
        )
        object.__setattr__(
            self, "line_length_distribution",
            _distribution(self.line_length_distribution),
        )
        object.__setattr__(
            self, "paragraph_length_distribution",
            _distribution(self.paragraph_length_distribution),
        )
        kinds = tuple((str(k), float(v)) for k, v in self.mutation_kind_weights)
        object.__setattr__(self, "mutation_kind_weights", kinds)
        if not self.seed_words:
            raise ValueError("need at least one seed word")
        for name in (
            "copy_probability",
            "line_initial_prefix_probability",
            "paragraph_initial_gallows_probability",
            "second_word_strip_probability",
            "line_final_glyph_probability",
        ):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        for kind, weight in kinds:
            if kind not in MUTATION_KINDS:
                raise ValueError(f"unknown mutation kind {kind!r}")
            if weight < 0:
                raise ValueError("mutation kind weights must be nonnegative")
        if sum(w for _, w in kinds) <= 0:
            raise ValueError("mutation kind weights must not all be zero")
        if any(k < 0 for k, _ in self.mutation_count_distribution):
            raise ValueError("mutation counts must be nonnegative")
        if any(k < 1 for k, _ in self.line_length_distribution):
            raise ValueError("line lengths must be >= 1")
        if any(k < 1 for k, _ in self.paragraph_length_distribution):
            raise ValueError("paragraph lengths must be >= 1")
        if self.source_window_lines < 1:
            raise ValueError("source_window_lines must be >= 1")
        if self.source_position_bias not in SOURCE_BIAS_KERNELS:
            raise ValueError(
                f"unknown source_position_bias {self.source_position_bias!r}"
            )
        if self.target_token_count < 1:
            raise ValueError("target_token_count must be >= 1")

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorParams":
        data = dict(data)
        data.pop("version", None)
        for key in (
            "mutation_count_distribution",
            "line_length_distribution",
            "paragraph_length_distribution",
            "mutation_kind_weights",
        ):
            if key in data and isinstance(data[key], dict):
                data[key] = tuple(data[key].items())
        unknown = set(data) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ValueError(f"unknown generator parameters: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path: str | Path) -> "GeneratorParams":
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))

    @classmethod
    def defaults(cls) -> "GeneratorParams":
        raw = resources.files("selfcite.data").joinpath("generator_defaults.json")
        return cls.from_dict(json.loads(raw.read_text(encoding="utf-8")))

    def replace(self, **changes) -> "GeneratorParams":
        return replace(self, **changes)


def _draw(rng: random.Random, distribution) -> int:
    values = [k for k, _ in distribution]
    weights = [v for _, v in distribution]
    return rng.choices(values, weights)[0]


def _mutate(seq, rng, alphabet, params):
    """Apply one cost-1 edit, never producing an empty token."""
    partners = alphabet.similar_partners
    insertable = tuple(
        g for g in alphabet.graphemes if g not in params.excluded_graphemes
    ) or alphabet.graphemes
    kinds = []
    weights = []
    for kind, weight in params.mutation_kind_weights:
        if weight <= 0:
            continue
        if kind == "delete" and len(seq) <= 1:
            continue
        if kind == "substitute_similar" and not any(partners[g] for g in seq):
            continue
        kinds.append(kind)
        weights.append(weight)
    if not kinds:
        kinds, weights = ["insert"], [1.0]
    kind = rng.choices(kinds, weights)[0]
    if kind == "insert":
        pos = rng.randrange(len(seq) + 1)
        return seq[:pos] + (rng.choice(insertable),) + seq[pos:]
    if kind == "delete":
        pos = rng.randrange(len(seq))
        return seq[:pos] + seq[pos + 1 :]
    eligible = [i for i, g in enumerate(seq) if partners[g]]
    pos = rng.choice(eligible)
    return seq[:pos] + (rng.choice(partners[seq[pos]]),) + seq[pos + 1 :]


def _canonical(word: tuple[str, ...], alphabet: Alphabet) -> tuple[str, ...]:
    # Mutations and prepends can abut characters that segment as one
    # grapheme (e.g. c + h); re-segmenting keeps tokens canonical so the
    # grapheme sequence always matches the surface form.
    return alphabet.segment("".join(word))


def _pick_source(history, current_line, m, rng, params):
    """Weighted draw of a source word from the recent writing window."""
    kernel = SOURCE_BIAS_KERNELS[params.source_position_bias]
    depth = params.source_window_lines - 1
    window = [current_line] + (history[-depth:][::-1] if depth else [])
    candidates = []
    weights = []
    for i, line in enumerate(window):
        for p, word in enumerate(line):
            candidates.append(word)
            weights.append(kernel(i, p, m))
    if not candidates:
        return None
    return rng.choices(candidates, weights)[0]


def generate(params: GeneratorParams, alphabet: Alphabet) -> Corpus:
    """Generate a corpus of ``params.target_token_count`` tokens.

    Deterministic for a fixed ``rng_seed``. Pages get synthetic loci
    ``<gNNN.P.M>``, and the corpus round-trips through the transliteration
    serializer.
    """
    seeds = [alphabet.segment(word) for word in params.seed_words]
    for name in ("prefix_graphemes", "gallows_graphemes", "line_final_glyphs"):
        for g in getattr(params, name):
            if g not in alphabet:
                raise ValueError(f"{name} entry {g!r} is not in the alphabet")
    rng = random.Random(params.rng_seed)
    history: list[list[tuple[str, ...]]] = []
    emitted = 0

    lines: list[tuple[Locus, tuple[Token, ...], int]] = []
    page_no = 1
    page_lines = 0
    para_id = 0

    while emitted < params.target_token_count:
        para_len = _draw(rng, params.paragraph_length_distribution)
        if page_lines and page_lines + para_len > _PAGE_CAPACITY_LINES:
            page_no += 1
            page_lines = 0
        for line_idx in range(para_len):
            if emitted >= params.target_token_count:
                break
            line_len = _draw(rng, params.line_length_distribution)
            current: list[tuple[str, ...]] = []
            added_initial = False
            first_base: tuple[str, ...] | None = None
            for m in range(line_len):
                if emitted >= params.target_token_count:
                    break
                if (
                    m == 1
                    and added_initial
                    and first_base
                    and rng.random() < params.second_word_strip_probability
                ):
                    word = first_base
                else:
                    word = None
                    has_history = bool(current) or any(history)
                    if has_history and rng.random() < params.copy_probability:
                        # the window can still be empty, e.g. at position 0
                        # with a one-line source window
                        word = _pick_source(history, current, m, rng, params)
                    if word is None:
                        word = seeds[rng.randrange(len(seeds))]
                    else:
                        k = _draw(rng, params.mutation_count_distribution)
                        for _ in range(k):
                            word = _mutate(word, rng, alphabet, params)
                        word = _canonical(word, alphabet)
                if m == 0:
                    first_base = word
                    if line_idx == 0:
                        if (
                            params.gallows_graphemes
                            and rng.random()
                            < params.paragraph_initial_gallows_probability
                        ):
                            added = rng.choice(params.gallows_graphemes)
                            word = _canonical((added,) + word, alphabet)
                            added_initial = True
                    elif (
                        params.prefix_graphemes
                        and rng.random() < params.line_initial_prefix_probability
                    ):
                        added = rng.choice(params.prefix_graphemes)
                        word = _canonical((added,) + word, alphabet)
                        added_initial = True
                if (
                    m == line_len - 1
                    and params.line_final_glyphs
                    and rng.random() < params.line_final_glyph_probability
                ):
                    word = _canonical(
                        word + (rng.choice(params.line_final_glyphs),), alphabet
                    )
                current.append(word)
                emitted += 1
            if current:
                page_lines += 1
                locus = Locus(
                    page=f"g{page_no:03d}",
                    unit="P",
                    line_no=page_lines,
                    raw_tag=f"<g{page_no:03d}.P.{page_lines}>",
                )
                tokens = tuple(
                    Token(raw="".join(word), graphemes=word) for word in current
                )
                lines.append((locus, tokens, para_id))
                history.append(current)
        para_id += 1

    corpus_lines = []
    for idx, (locus, tokens, pid) in enumerate(lines):
        initial = idx == 0 or lines[idx - 1][2] != pid
        final = idx == len(lines) - 1 or lines[idx + 1][2] != pid
        corpus_lines.append(Line(locus, tokens, initial, final, pid))
    pages = []
    for locus, _, _ in lines:
        if not pages or pages[-1] != locus.page:
            pages.append(locus.page)
    return Corpus(tuple(corpus_lines), tuple(pages), "transliteration")


def shuffle_control(corpus: Corpus, rng_seed: int) -> Corpus:
    """Uniformly permute all tokens, preserving every line's token count."""
    if not corpus.lines:
        raise ValueError("empty corpus")
    tokens = list(corpus.iter_tokens())
    random.Random(rng_seed).shuffle(tokens)
    out = []
    cursor = 0
    for line in corpus.lines:
        n = len(line.tokens)
        out.append(replace(line, tokens=tuple(tokens[cursor : cursor + n])))
        cursor += n
    return Corpus(tuple(out), corpus.page_order, corpus.source_kind)


@dataclass(frozen=True)
class SignatureReport:
    """Co-occurrence signature of a corpus, as used by the generator check."""

    token_count: int
    adjacency_lift: float
    row_decay: dict[int, bool]
    natural_text_contrast: float
    row_means: dict[int, dict[int, float]] = field(repr=False)

    @property
    def row_decay_ok(self) -> bool:
        return all(self.row_decay.values())

    def as_dict(self) -> dict:
        return {
            "token_count": self.token_count,
            "adjacency_lift": self.adjacency_lift,
            "row_decay": {str(d): ok for d, ok in sorted(self.row_decay.items())},
            "row_decay_ok": self.row_decay_ok,
            "natural_text_contrast": self.natural_text_contrast,
            "row_means": {
                str(d): {f"n-{i}": v for i, v in sorted(means.items())}
                for d, means in sorted(self.row_means.items())
            },
        }


def validate_signature(
    corpus: Corpus,
    alphabet: Alphabet,
    max_line_offset: int = 9,
    max_pos_offset: int = 6,
    min_graphemes: int = 2,
    threads: int = 1,
) -> SignatureReport:
    """Measure the self-citation signature of a corpus.

    ``adjacency_lift`` is the identical-word proportion immediately left of
    the writing position divided by the mean proportion of the deepest row;
    ``row_decay`` records, per distance, whether rows n-1..n-3 average above
    rows n-7..n-9; ``natural_text_contrast`` is the immediate-repetition
    proportion itself, near zero for natural running text.
    """
    if corpus.token_count() < 2000:
        raise ValueError("corpus too small: need at least 2000 tokens")
    normalized = normalize(corpus, alphabet, min_graphemes)
    spec = GridSpec(
        alphabet=alphabet,
        max_line_offset=max_line_offset,
        max_pos_offset=max_pos_offset,
    )
    grids = compute_grids(normalized, spec, (0, 1, 2), threads=threads)
    row_means = {
        d: {
            i: mean
            for i in range(1, max_line_offset + 1)
            if (mean := grid.row_mean(i)) is not None
        }
        for d, grid in grids.items()
    }
    adjacent = grids[0].proportion(0, -1)
    adjacent = 0.0 if adjacent is None else adjacent
    deep = grids[0].row_mean(max_line_offset)
    if deep is None:
        lift = float("nan")
    elif deep == 0.0:
        lift = float("inf") if adjacent > 0 else 0.0
    else:
        lift = adjacent / deep
    decay = {}
    for d, means in row_means.items():
        near = [means[i] for i in (1, 2, 3) if i in means]
        far = [means[i] for i in (7, 8, 9) if i in means]
        decay[d] = bool(near and far) and (
            sum(near) / len(near) > sum(far) / len(far)
        )
    return SignatureReport(
        token_count=corpus.token_count(),
        adjacency_lift=lift,
        row_decay=decay,
        natural_text_contrast=adjacent,
        row_means=row_means,
    )
