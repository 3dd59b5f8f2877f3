"""Corpus ingestion: transliteration and plaintext parsing, normalization.

A corpus is an ordered sequence of lines, each carrying its locus (page,
text-unit, line number) and tokens. Line order is source order, and after
any filtering the remaining lines are treated as adjacent, so the first
line of a page follows the last retained line of the previous page.

Transliteration format (documented subset)
------------------------------------------
Each content line is ``<page.unit.line[;transcriber]> glyphtext`` where
``.`` and ``,`` separate tokens, ``!`` and ``%`` are fillers (removed), and
lines starting with ``#`` are comments. A few common extras are tolerated:
``{...}`` spans are dropped, ``-`` acts as a separator, and a trailing
``=`` marks the end of a paragraph. Multi-transcriber interleaving and
inline alternates are out of scope.

Paragraph detection: a line starts a new paragraph when it is the first
retained line of its page, when a blank source line precedes it, when its
unit differs from the previous retained line's unit, or when the previous
line ended with ``=``. Lines dropped by the unit filter break paragraphs
the same way blank lines do.
"""

from __future__ import annotations

import re
import string
import unicodedata
from dataclasses import dataclass, replace
from typing import Iterable, Iterator

from selfcite.editdist import Alphabet

TRANSLITERATION = "transliteration"
PLAINTEXT = "plaintext"


class ParseError(ValueError):
    """Malformed input, reported with its 1-based source line number."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


@dataclass(frozen=True)
class Locus:
    """Source position of a line: page, text unit, line number."""

    page: str
    unit: str
    line_no: int
    raw_tag: str

    def __post_init__(self):
        if not self.page:
            raise ValueError("locus page must be nonempty")
        if self.line_no < 1:
            raise ValueError("locus line_no must be >= 1")

    @property
    def unit_kind(self) -> str:
        """Leading alphabetic part of the unit: "P1" and "P" both map to "P"."""
        head = ""
        for c in self.unit:
            if c.isalpha():
                head += c
            else:
                break
        return head or self.unit


@dataclass(frozen=True)
class Token:
    """One word occurrence; graphemes are filled in by normalization."""

    raw: str
    graphemes: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.raw:
            raise ValueError("token must be nonempty")


@dataclass(frozen=True)
class Line:
    locus: Locus
    tokens: tuple[Token, ...]
    paragraph_initial: bool
    paragraph_final: bool
    paragraph_id: int


@dataclass(frozen=True)
class Corpus:
    lines: tuple[Line, ...]
    page_order: tuple[str, ...]
    source_kind: str

    def token_count(self) -> int:
        return sum(len(line.tokens) for line in self.lines)

    def iter_tokens(self) -> Iterator[Token]:
        for line in self.lines:
            yield from line.tokens


@dataclass(frozen=True)
class ParserOptions:
    """Transliteration parsing options.

    ``units`` restricts ingestion to locus unit kinds (e.g. {"P"} keeps
    paragraph text and drops labels); None keeps every locus.
    """

    units: frozenset[str] | None = None


@dataclass(frozen=True)
class PlainOptions:
    """Plaintext parsing options."""

    fold_case: bool = True


_LOCUS_RE = re.compile(
    r"<(?P<page>[^<>.;,\s]+)\.(?P<unit>[^<>.;,\s]+)\.(?P<line>\d+)"
    r"(?:;(?P<transcriber>[^<>]*))?>"
)
_BRACE_RE = re.compile(r"\{[^}]*\}")
_SEPARATORS_RE = re.compile(r"[.,\s=-]+")
_EDGE_PUNCT = string.punctuation + "‘’“”«»–—…"


def _finish_paragraph_flags(records: list[tuple[Locus, tuple[Token, ...], int]],
                            page_order: list[str], source_kind: str) -> Corpus:
    """Assemble lines, deriving paragraph-initial/final flags from ids."""
    lines = []
    for idx, (locus, tokens, para_id) in enumerate(records):
        initial = idx == 0 or records[idx - 1][2] != para_id
        final = idx == len(records) - 1 or records[idx + 1][2] != para_id
        lines.append(Line(locus, tokens, initial, final, para_id))
    return Corpus(tuple(lines), tuple(page_order), source_kind)


def parse_transliteration(text: str, options: ParserOptions = ParserOptions()) -> Corpus:
    """Parse transliteration text into a corpus.

    Raises :class:`ParseError` for content lines without a well-formed
    locus tag, and ``ValueError("empty corpus")`` when nothing remains.
    """
    records: list[tuple[Locus, tuple[Token, ...], int]] = []
    page_order: list[str] = []
    para_id = -1
    prev_page: str | None = None
    prev_unit: str | None = None
    pending_break = False

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        stripped = raw_line.strip()
        if not stripped:
            pending_break = True
            continue
        if stripped.startswith("#"):
            continue
        match = _LOCUS_RE.match(stripped)
        if match is None:
            raise ParseError(line_no, f"malformed locus tag in {stripped[:40]!r}")
        locus = Locus(
            page=match.group("page"),
            unit=match.group("unit"),
            line_no=int(match.group("line")),
            raw_tag=match.group(0),
        )
        body = _BRACE_RE.sub("", stripped[match.end():])
        ends_paragraph = body.rstrip().endswith("=")
        body = body.replace("!", "").replace("%", "")
        token_strings = [t for t in _SEPARATORS_RE.split(body) if t]

        if options.units is not None and locus.unit_kind not in options.units:
            pending_break = True
            continue

        new_page = locus.page != prev_page
        if new_page or pending_break or locus.unit != prev_unit:
            para_id += 1
        if new_page:
            page_order.append(locus.page)
        records.append((locus, tuple(Token(t) for t in token_strings), para_id))
        prev_page = locus.page
        prev_unit = locus.unit
        pending_break = ends_paragraph

    if not records:
        raise ValueError("empty corpus")
    return _finish_paragraph_flags(records, page_order, TRANSLITERATION)


def parse_plaintext(text: str, options: PlainOptions = PlainOptions()) -> Corpus:
    """Parse newline-delimited plain text into a corpus.

    Tokens are split on whitespace with punctuation stripped from their
    edges; lines left empty are dropped. Blank source lines separate
    paragraphs. The whole text is treated as a single page "text".
    """
    records: list[tuple[Locus, tuple[Token, ...], int]] = []
    para_id = 0
    pending_break = False
    line_no = 0
    for raw_line in unicodedata.normalize("NFC", text).splitlines():
        if not raw_line.strip():
            pending_break = True
            continue
        tokens = []
        for word in raw_line.split():
            word = word.strip(_EDGE_PUNCT)
            if not word:
                continue
            if options.fold_case:
                word = word.casefold()
            tokens.append(Token(word))
        if not tokens:
            pending_break = True
            continue
        if pending_break and records:
            para_id += 1
        pending_break = False
        line_no += 1
        locus = Locus(page="text", unit="L", line_no=line_no, raw_tag="")
        records.append((locus, tuple(tokens), para_id))
    if not records:
        raise ValueError("empty corpus")
    return _finish_paragraph_flags(records, ["text"], PLAINTEXT)


def _rebuild(corpus: Corpus, kept: list[tuple[Locus, tuple[Token, ...], int]]) -> Corpus:
    pages = []
    for locus, _, _ in kept:
        if not pages or pages[-1] != locus.page:
            pages.append(locus.page)
    return _finish_paragraph_flags(kept, pages, corpus.source_kind)


def normalize(corpus: Corpus, alphabet: Alphabet, min_graphemes: int = 2) -> Corpus:
    """Segment every token and drop those shorter than ``min_graphemes``.

    Lines left without tokens are removed; paragraph flags are rederived so
    each surviving paragraph still has an initial and a final line.
    Idempotent. Raises :class:`selfcite.editdist.SegmentationError` for
    tokens the alphabet cannot segment.
    """
    kept: list[tuple[Locus, tuple[Token, ...], int]] = []
    for line in corpus.lines:
        tokens = []
        for token in line.tokens:
            graphemes = alphabet.segment(token.raw)
            if len(graphemes) >= min_graphemes:
                tokens.append(replace(token, graphemes=graphemes))
        if tokens:
            kept.append((line.locus, tuple(tokens), line.paragraph_id))
    if not kept:
        raise ValueError("empty corpus")
    return _rebuild(corpus, kept)


def filter_pages(corpus: Corpus, pages: Iterable[str]) -> Corpus:
    """Keep only lines whose page is in ``pages``, preserving order.

    The retained lines are adjacent afterwards, exactly as in the unfiltered
    corpus contract. Raises on an empty page set and when nothing matches.
    """
    page_set = frozenset(pages)
    if not page_set:
        raise ValueError("pages must be a nonempty set")
    kept = [(line.locus, line.tokens, line.paragraph_id)
            for line in corpus.lines if line.locus.page in page_set]
    if not kept:
        raise ValueError("no lines match")
    return _rebuild(corpus, kept)


def format_transliteration(corpus: Corpus) -> str:
    """Serialize a corpus in the transliteration format.

    Paragraph boundaries become blank lines, so parsing the output yields
    the same tokens and paragraph structure.
    """
    out: list[str] = []
    for line in corpus.lines:
        if line.paragraph_initial and out:
            out.append("")
        tag = line.locus.raw_tag or (
            f"<{line.locus.page}.{line.locus.unit}.{line.locus.line_no}>"
        )
        out.append(f"{tag} {'.'.join(tok.raw for tok in line.tokens)}")
    return "\n".join(out) + "\n"
