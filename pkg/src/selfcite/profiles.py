"""Analysis profiles: an alphabet plus the glyph sets the statistics use.

Profiles are data, not code. The shipped "vms" profile carries the EVA
grapheme inventory, the similarity classes treated as one-cost
substitutions, and the gallows/prefix/line-final sets; editing the JSON and
re-running reproduces every published number under corrected classes. The
"chars" profile is synthesized from whatever characters a plaintext corpus
contains, with no similarity classes and unit costs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from selfcite.corpus import Corpus
from selfcite.editdist import Alphabet

BUILTIN_PROFILES = ("vms",)


@dataclass(frozen=True)
class Profile:
    name: str
    alphabet: Alphabet
    gallows: frozenset[str]
    prefixes: frozenset[str]
    line_final_glyphs: frozenset[str]
    grid_pos_offset: int
    digest: str

    def describe(self) -> dict:
        """Effective profile as a JSON-ready dict."""
        return {
            "name": self.name,
            "graphemes": list(self.alphabet.graphemes),
            "similarity_groups": [sorted(g) for g in self.alphabet.similarity_groups],
            "similar_substitution_cost": self.alphabet.similar_substitution_cost,
            "dissimilar_substitution_cost": self.alphabet.dissimilar_substitution_cost,
            "indel_cost": self.alphabet.indel_cost,
            "gallows": sorted(self.gallows),
            "prefixes": sorted(self.prefixes),
            "line_final_glyphs": sorted(self.line_final_glyphs),
            "grid_pos_offset": self.grid_pos_offset,
            "digest": self.digest,
        }


def _profile_from_dict(data: dict, name: str, digest: str) -> Profile:
    if not isinstance(data, dict):
        raise ValueError("malformed profile: expected a JSON object")
    try:
        graphemes = data["graphemes"]
    except KeyError:
        raise ValueError("malformed profile: missing 'graphemes'") from None
    if not isinstance(graphemes, list) or not all(isinstance(g, str) for g in graphemes):
        raise ValueError("malformed profile: 'graphemes' must be a list of strings")
    groups = data.get("similarity_groups", [])
    if not isinstance(groups, list) or not all(isinstance(g, list) for g in groups):
        raise ValueError("malformed profile: 'similarity_groups' must be a list of lists")
    alphabet = Alphabet(
        graphemes=tuple(graphemes),
        similarity_groups=tuple(frozenset(g) for g in groups),
        similar_substitution_cost=data.get("similar_substitution_cost", 1),
        dissimilar_substitution_cost=data.get("dissimilar_substitution_cost", 2),
        indel_cost=data.get("indel_cost", 1),
    )
    for key in ("gallows", "prefixes", "line_final_glyphs"):
        for g in data.get(key, []):
            if g not in alphabet:
                raise ValueError(f"malformed profile: {key} grapheme {g!r} not in inventory")
    return Profile(
        name=data.get("name", name),
        alphabet=alphabet,
        gallows=frozenset(data.get("gallows", [])),
        prefixes=frozenset(data.get("prefixes", [])),
        line_final_glyphs=frozenset(data.get("line_final_glyphs", [])),
        grid_pos_offset=int(data.get("grid_pos_offset", 6)),
        digest=digest,
    )


def load_profile(spec: str | Path) -> Profile:
    """Load a profile by builtin name ("vms") or from a JSON file path."""
    if isinstance(spec, str) and spec in BUILTIN_PROFILES:
        raw = (
            resources.files("selfcite.data.profiles")
            .joinpath(f"{spec}.json")
            .read_bytes()
        )
        name = spec
    else:
        path = Path(spec)
        if not path.exists():
            raise ValueError(
                f"profile {spec!r} is neither a builtin name "
                f"({', '.join(BUILTIN_PROFILES)}) nor an existing file"
            )
        raw = path.read_bytes()
        name = path.stem
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed profile {name!r}: {exc}") from None
    return _profile_from_dict(data, name, hashlib.sha256(raw).hexdigest())


def profile_from_corpus(corpus: Corpus, name: str = "chars") -> Profile:
    """Single-character profile over the characters observed in a corpus."""
    chars = sorted({c for tok in corpus.iter_tokens() for c in tok.raw})
    if not chars:
        raise ValueError("empty corpus")
    alphabet = Alphabet.single_characters(chars)
    digest = hashlib.sha256(("chars:" + "".join(chars)).encode()).hexdigest()
    return Profile(
        name=name,
        alphabet=alphabet,
        gallows=frozenset(),
        prefixes=frozenset(),
        line_final_glyphs=frozenset(),
        grid_pos_offset=5,
        digest=digest,
    )
