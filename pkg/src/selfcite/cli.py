"""Command-line interface.

Every run that writes an output file also writes a ``.manifest.json``
sidecar recording the tool version, the argument vector, and SHA-256
digests of inputs and outputs; ``selfcite rerun`` re-executes a manifest
into a fresh directory and verifies the outputs are byte-identical.

Exit codes: 0 success, 1 data error (message names the offending file or
value), 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from pathlib import Path

import selfcite
from selfcite.corpus import (
    ParseError,
    ParserOptions,
    filter_pages,
    format_transliteration,
    normalize,
    parse_plaintext,
    parse_transliteration,
)
from selfcite.cooccur import GridSpec, compute_grid, render_grid
from selfcite.editdist import SegmentationError
from selfcite.generator import (
    GeneratorParams,
    generate,
    shuffle_control,
    validate_signature,
)
from selfcite.network import TypeTable, build_graph, edge_operation, shortest_path
from selfcite.posstats import positional_stats, rank_frequency
from selfcite.profiles import Profile, load_profile, profile_from_corpus

RNG_ALGORITHM = "python-random-mt19937"


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from None


def _load_pageset(path: str) -> set[str]:
    pages = set()
    for line in _read_text(path).splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            pages.add(line)
    if not pages:
        raise ValueError(f"page set {path} is empty")
    return pages


def _load_corpus(args) -> tuple[object, Profile]:
    """Parse the input file and resolve the profile for it."""
    text = _read_text(args.input)
    if args.kind == "plaintext":
        corpus = parse_plaintext(text)
    else:
        units = frozenset(args.units.split(",")) if args.units else None
        corpus = parse_transliteration(text, ParserOptions(units=units))
    if args.profile == "chars":
        profile = profile_from_corpus(corpus)
    else:
        profile = load_profile(args.profile)
    args.profile_digest = profile.digest
    if args.pages:
        corpus = filter_pages(corpus, _load_pageset(args.pages))
    return corpus, profile


def _write_output(
    args,
    data: bytes,
    extra_params: dict | None = None,
    extra_outputs: list[Path] | None = None,
) -> None:
    out = Path(args.out)
    out.write_bytes(data)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "argv")}
    if extra_params:
        params.update(extra_params)
    outputs = [out] + list(extra_outputs or [])
    manifest = {
        "tool": "selfcite",
        "version": selfcite.__version__,
        "subcommand": args.subcommand,
        "argv": args.argv,
        "params": params,
        "inputs": [
            {"path": p, "sha256": _sha256(Path(p))}
            for p in _input_paths(args)
        ],
        "outputs": [{"path": str(o), "sha256": _sha256(o)} for o in outputs],
    }
    manifest_path = out.with_name(out.name + ".manifest.json")
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _input_paths(args) -> list[str]:
    paths = []
    for attr in ("input", "params_file", "pages"):
        value = getattr(args, attr, None)
        if value:
            paths.append(value)
    profile = getattr(args, "profile", None)
    if profile and profile not in ("vms", "chars"):
        paths.append(profile)
    return paths


def _emit(args, data: bytes) -> None:
    if args.out:
        _write_output(args, data)
    else:
        sys.stdout.write(data.decode("utf-8"))


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_parse(args) -> int:
    corpus, profile = _load_corpus(args)
    if args.min_graphemes > 0:
        corpus = normalize(corpus, profile.alphabet, args.min_graphemes)
    _emit(args, format_transliteration(corpus).encode("utf-8"))
    return 0


def _cmd_stats(args) -> int:
    corpus, profile = _load_corpus(args)
    corpus = normalize(corpus, profile.alphabet, args.min_graphemes)
    report = positional_stats(
        corpus, profile.gallows, profile.prefixes, profile.line_final_glyphs,
        contiguous_subgroup=not args.subsequence_subgroup,
    )
    fields = report.as_dict()
    if args.format == "markdown":
        lines = ["| statistic | value | sample |", "|---|---|---|"]
        for name, info in fields.items():
            value = info["value"]
            shown = f"{value:.4f}" if value == value else "n/a"
            lines.append(f"| {name} | {shown} | {info['total']} |")
        data = ("\n".join(lines) + "\n").encode("utf-8")
    else:
        data = (
            "\n".join(json.dumps({"statistic": k, **v}) for k, v in fields.items())
            + "\n"
        ).encode("utf-8")
    extra_outputs = []
    if args.rank_frequency_out:
        ranks = rank_frequency(corpus)
        rank_path = Path(args.rank_frequency_out)
        rank_path.write_text(
            "rank,type,count\n"
            + "".join(f"{r},{w},{c}\n" for r, w, c in ranks),
            encoding="utf-8",
        )
        extra_outputs.append(rank_path)
    if args.out:
        _write_output(args, data, extra_outputs=extra_outputs)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


def _cmd_grid(args) -> int:
    corpus, profile = _load_corpus(args)
    corpus = normalize(corpus, profile.alphabet, args.min_graphemes)
    if args.distance > 2:
        warnings.warn(
            f"distance {args.distance} is beyond the published grids; "
            "computing it anyway", stacklevel=1,
        )
    cols = args.cols if args.cols is not None else profile.grid_pos_offset
    spec = GridSpec(
        alphabet=profile.alphabet,
        max_line_offset=args.rows,
        max_pos_offset=cols,
        target_distance=args.distance,
        drop_line_edges=args.drop_line_edges,
    )
    grid = compute_grid(corpus, spec, threads=args.threads)
    _emit(args, render_grid(grid, args.format))
    return 0


def _cmd_network(args) -> int:
    corpus, profile = _load_corpus(args)
    corpus = normalize(corpus, profile.alphabet, args.min_graphemes)
    table = TypeTable.from_corpus(corpus, profile.alphabet)
    graph = build_graph(table, profile.alphabet, args.min_freq, args.strategy)
    rows = ["type_a,type_b,operation"]
    for a, b in sorted(graph.edges()):
        op = edge_operation(
            table.entries[a].graphemes, table.entries[b].graphemes, profile.alphabet
        )
        rows.append(f"{a},{b},{op}")
    _emit(args, ("\n".join(rows) + "\n").encode("utf-8"))
    return 0


def _cmd_path(args) -> int:
    corpus, profile = _load_corpus(args)
    corpus = normalize(corpus, profile.alphabet, args.min_graphemes)
    table = TypeTable.from_corpus(corpus, profile.alphabet)
    graph = build_graph(table, profile.alphabet, args.min_freq)
    path = shortest_path(graph, getattr(args, "from"), args.to)
    if path is None:
        print("no path")
        return 1
    _emit(args, (" -> ".join(path) + "\n").encode("utf-8"))
    return 0


def _cmd_generate(args) -> int:
    params = (
        GeneratorParams.from_file(args.params_file)
        if args.params_file
        else GeneratorParams.defaults()
    )
    if args.tokens is not None:
        params = params.replace(target_token_count=args.tokens)
    if args.seed is not None:
        params = params.replace(rng_seed=args.seed)
    profile = load_profile(args.profile)
    args.profile_digest = profile.digest
    corpus = generate(params, profile.alphabet)
    data = format_transliteration(corpus).encode("utf-8")
    if args.out:
        _write_output(args, data, extra_params={"rng": RNG_ALGORITHM,
                                                "rng_seed": params.rng_seed})
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


def _cmd_shuffle(args) -> int:
    corpus, _ = _load_corpus(args)
    shuffled = shuffle_control(corpus, args.seed)
    data = format_transliteration(shuffled).encode("utf-8")
    if args.out:
        _write_output(args, data, extra_params={"rng": RNG_ALGORITHM})
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


def _cmd_validate(args) -> int:
    corpus, profile = _load_corpus(args)
    report = validate_signature(
        corpus, profile.alphabet, min_graphemes=args.min_graphemes,
        threads=args.threads,
    )
    data = (json.dumps(report.as_dict(), indent=2) + "\n").encode("utf-8")
    _emit(args, data)
    return 0


def _cmd_profile(args) -> int:
    profile = load_profile(args.profile)
    args.profile_digest = profile.digest
    data = (json.dumps(profile.describe(), indent=2) + "\n").encode("utf-8")
    _emit(args, data)
    return 0


def _cmd_rerun(args) -> int:
    manifest = json.loads(_read_text(args.manifest))
    for entry in manifest["inputs"]:
        path = Path(entry["path"])
        if not path.exists():
            raise ValueError(f"manifest input missing: {path}")
        if _sha256(path) != entry["sha256"]:
            raise ValueError(f"manifest input changed: {path}")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    argv = list(manifest["argv"])
    replaced = []
    for expected in manifest["outputs"]:
        original = expected["path"]
        fresh = out_dir / Path(original).name
        argv = [str(fresh) if token == original else token for token in argv]
        replaced.append((fresh, expected["sha256"]))
    code = main(argv)
    if code != 0:
        raise ValueError(f"re-run exited with {code}")
    ok = True
    for fresh, digest in replaced:
        match = fresh.exists() and _sha256(fresh) == digest
        print(f"{'OK' if match else 'MISMATCH'} {fresh}")
        ok &= match
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser construction
# ---------------------------------------------------------------------------

def _add_io_options(sub, *, kind=True, profile_default="vms", pages=True):
    sub.add_argument("--input", required=True, help="input corpus file")
    if kind:
        sub.add_argument(
            "--kind", choices=("transliteration", "plaintext"),
            default="transliteration", help="input format",
        )
    sub.add_argument(
        "--profile", default=profile_default,
        help="profile: builtin name, JSON path, or 'chars' to derive "
             "single-character costs from the input",
    )
    sub.add_argument("--units", default=None,
                     help="comma-separated locus unit kinds to keep (e.g. P)")
    if pages:
        sub.add_argument("--pages", default=None,
                         help="file with one page id per line")
    sub.add_argument("--min-graphemes", type=int, default=2, dest="min_graphemes",
                     help="drop tokens shorter than this many graphemes")
    sub.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfcite",
        description="Positional co-occurrence analysis and self-citation "
                    "text generation for transliterated manuscripts.",
    )
    parser.add_argument("--version", action="version", version=selfcite.__version__)
    subs = parser.add_subparsers(dest="subcommand", required=True)

    sub = subs.add_parser("parse", help="parse and re-emit a corpus")
    _add_io_options(sub)
    sub.set_defaults(func=_cmd_parse)

    sub = subs.add_parser("stats", help="positional statistics report")
    _add_io_options(sub)
    sub.add_argument("--format", choices=("json-lines", "markdown"),
                     default="json-lines")
    sub.add_argument("--rank-frequency-out", default=None,
                     dest="rank_frequency_out",
                     help="also write rank,type,count CSV to this file")
    sub.add_argument("--subsequence-subgroup", action="store_true",
                     dest="subsequence_subgroup",
                     help="subgroup test uses non-contiguous subsequences")
    sub.set_defaults(func=_cmd_stats)

    sub = subs.add_parser("grid", help="co-occurrence grid")
    _add_io_options(sub)
    sub.add_argument("--distance", type=int, default=0)
    sub.add_argument("--rows", type=int, default=9,
                     help="number of previous lines in the window")
    sub.add_argument("--cols", type=int, default=None,
                     help="position offsets each side (default: profile value)")
    sub.add_argument("--drop-line-edges", action="store_true",
                     dest="drop_line_edges",
                     help="ignore line-initial and line-final words")
    sub.add_argument("--threads", type=int, default=1)
    sub.add_argument("--format", choices=("csv", "markdown", "svg"), default="csv")
    sub.set_defaults(func=_cmd_grid)

    sub = subs.add_parser("network", help="distance-1 similarity edges as CSV")
    _add_io_options(sub)
    sub.add_argument("--min-freq", type=int, default=4, dest="min_freq")
    sub.add_argument("--strategy", choices=("neighbors", "buckets"),
                     default="neighbors")
    sub.set_defaults(func=_cmd_network)

    sub = subs.add_parser("path", help="shortest similarity path between types")
    _add_io_options(sub)
    sub.add_argument("--min-freq", type=int, default=4, dest="min_freq")
    sub.add_argument("--from", required=True, help="start word type")
    sub.add_argument("--to", required=True, help="end word type")
    sub.set_defaults(func=_cmd_path)

    sub = subs.add_parser("generate", help="generate a synthetic corpus")
    sub.add_argument("--params", default=None, dest="params_file",
                     help="generator parameter JSON (default: packaged values)")
    sub.add_argument("--profile", default="vms")
    sub.add_argument("--tokens", type=int, default=None)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=_cmd_generate)

    sub = subs.add_parser("shuffle", help="token-shuffle null model")
    _add_io_options(sub)
    sub.add_argument("--seed", type=int, default=0)
    sub.set_defaults(func=_cmd_shuffle)

    sub = subs.add_parser("validate", help="self-citation signature report")
    _add_io_options(sub)
    sub.add_argument("--threads", type=int, default=1)
    sub.set_defaults(func=_cmd_validate)

    sub = subs.add_parser("profile", help="validate and print a profile")
    sub.add_argument("--profile", default="vms")
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=_cmd_profile)

    sub = subs.add_parser("rerun", help="re-execute a run manifest and verify")
    sub.add_argument("manifest", help="path to a .manifest.json file")
    sub.add_argument("--out-dir", required=True, dest="out_dir")
    sub.set_defaults(func=_cmd_rerun)

    return parser


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = list(argv)
    try:
        return args.func(args)
    except (ParseError, SegmentationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
