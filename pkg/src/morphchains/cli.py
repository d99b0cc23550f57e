"""Command-line interface.

Subcommands: train, segment, chains, evaluate, induce-affixes,
dump-features, diagnose, sweep.  Data output goes to stdout (or --out);
diagnostics and the effective configuration go to stderr.  Exit codes:
0 success, 1 data/parse errors, 2 usage errors.

Options may also come from a ``--config`` file of ``key = value`` lines
(``#`` starts a comment); explicit flags win over the file, the file wins
over built-in defaults.
"""

from __future__ import annotations

import argparse
import sys

from .affixes import build_affix_correlations, induce_affix_inventory
from .candidates import STOP_CANDIDATE, Candidate, CandidateConfig, CandidateType
from .corpus import GoldSegmentations, load_gold, load_wordlist
from .embeddings import load_vectors
from .errors import DataError, MorphChainError
from .evaluation import (
    affix_frequency_profile,
    distribution_diagnostics,
    evaluate_boundaries,
    sweep_frequency_threshold,
)
from .features import FeatureContext, extract_features
from .model import load_model, save_model
from .pipeline import PipelineParams, run_training, segment_many

_HYPER_DEFAULTS = {
    "lambda": 1.0,
    "neighborhood_k": 5,
    "min_parent_ratio": 0.5,
    "k_suffixes": 100,
    "k_prefixes": 100,
    "min_shared_stems": 2,
    "min_freq": 1,
    "max_iter": 1000,
    "tol": 1e-5,
    "seed": 0,
    "jobs": 1,
    "lowercase": False,
    "transformations_require_vocab": True,
}

_BOOL_KEYS = {"lowercase", "transformations_require_vocab"}


def _add_hyper_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("hyperparameters")
    group.add_argument("--lambda", dest="lambda_", type=float, default=None,
                       help="L2 regularization strength (default 1.0)")
    group.add_argument("--neighborhood-k", type=int, default=None,
                       help="transposition window size at each word edge (default 5)")
    group.add_argument("--min-parent-ratio", type=float, default=None,
                       help="minimum parent length as a fraction of the word (default 0.5)")
    group.add_argument("--k-suffixes", type=int, default=None,
                       help="suffix inventory size (default 100)")
    group.add_argument("--k-prefixes", type=int, default=None,
                       help="prefix inventory size (default 100)")
    group.add_argument("--min-shared-stems", type=int, default=None,
                       help="stems two affixes must share to correlate (default 2)")
    group.add_argument("--min-freq", type=int, default=None,
                       help="frequency threshold on training words (default 1)")
    group.add_argument("--max-iter", type=int, default=None,
                       help="optimizer iteration cap (default 1000)")
    group.add_argument("--tol", type=float, default=None,
                       help="gradient infinity-norm stopping tolerance (default 1e-5)")
    group.add_argument("--seed", type=int, default=None,
                       help="reserved; training is deterministic (default 0)")
    group.add_argument("--no-transform-vocab-filter", action="store_true", default=False,
                       help="keep Repeat candidates whose parent is out of vocabulary")


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None,
                        help="key = value file supplying defaults for any option")
    parser.add_argument("--out", default=None,
                        help="write data output to this file instead of stdout")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes for per-word work (default 1)")
    parser.add_argument("--lowercase", action="store_true", default=None,
                        help="case-fold all input words")


def _parse_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DataError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key == "lambda_":
                key = "lambda"
            values[key] = value.strip()
    return values


def _coerce(key: str, text: str):
    if key in _BOOL_KEYS:
        lowered = text.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise DataError(f"config key {key!r}: not a boolean: {text!r}")
    reference = _HYPER_DEFAULTS[key]
    return type(reference)(text)


def _resolve_settings(args: argparse.Namespace) -> dict:
    """Merge flags over config-file values over defaults."""
    from_file = {}
    if getattr(args, "config", None):
        raw = _parse_config_file(args.config)
        for key, text in raw.items():
            if key not in _HYPER_DEFAULTS:
                raise DataError(f"unknown config key {key!r}")
            from_file[key] = _coerce(key, text)

    settings = dict(_HYPER_DEFAULTS)
    settings.update(from_file)
    flag_names = {
        "lambda": "lambda_",
        "neighborhood_k": "neighborhood_k",
        "min_parent_ratio": "min_parent_ratio",
        "k_suffixes": "k_suffixes",
        "k_prefixes": "k_prefixes",
        "min_shared_stems": "min_shared_stems",
        "min_freq": "min_freq",
        "max_iter": "max_iter",
        "tol": "tol",
        "seed": "seed",
        "jobs": "jobs",
        "lowercase": "lowercase",
    }
    for key, attr in flag_names.items():
        value = getattr(args, attr, None)
        if value is not None:
            settings[key] = value
    if getattr(args, "no_transform_vocab_filter", False):
        settings["transformations_require_vocab"] = False
    return settings


def _validate_settings(settings: dict, parser: argparse.ArgumentParser) -> None:
    checks = [
        (settings["lambda"] >= 0, "--lambda must be >= 0"),
        (settings["neighborhood_k"] >= 1, "--neighborhood-k must be >= 1"),
        (0 < settings["min_parent_ratio"] <= 1, "--min-parent-ratio must be in (0, 1]"),
        (settings["k_suffixes"] >= 1, "--k-suffixes must be >= 1"),
        (settings["k_prefixes"] >= 1, "--k-prefixes must be >= 1"),
        (settings["min_shared_stems"] >= 1, "--min-shared-stems must be >= 1"),
        (settings["min_freq"] >= 1, "--min-freq must be >= 1"),
        (settings["max_iter"] >= 0, "--max-iter must be >= 0"),
        (settings["tol"] > 0, "--tol must be > 0"),
        (settings["jobs"] >= 1, "--jobs must be >= 1"),
    ]
    for ok, message in checks:
        if not ok:
            parser.error(message)


def _echo_settings(settings: dict, paths: dict) -> None:
    for key, value in paths.items():
        if value is not None:
            print(f"config: {key} = {value}", file=sys.stderr)
    for key in sorted(settings):
        print(f"config: {key} = {settings[key]}", file=sys.stderr)


def _params_from_settings(settings: dict) -> PipelineParams:
    return PipelineParams(
        min_freq=settings["min_freq"],
        min_parent_ratio=settings["min_parent_ratio"],
        transformations_require_vocab=settings["transformations_require_vocab"],
        k_suffixes=settings["k_suffixes"],
        k_prefixes=settings["k_prefixes"],
        min_shared_stems=settings["min_shared_stems"],
        l2_penalty=settings["lambda"],
        neighborhood_k=settings["neighborhood_k"],
        max_iter=settings["max_iter"],
        tol=settings["tol"],
        seed=settings["seed"],
    )


def _open_out(args: argparse.Namespace):
    if getattr(args, "out", None):
        return open(args.out, "w", encoding="utf-8")
    return sys.stdout


def _read_words(args: argparse.Namespace, lowercase: bool) -> list[str]:
    source = open(args.words, encoding="utf-8") if getattr(args, "words", None) else sys.stdin
    try:
        words = [line.strip() for line in source if line.strip()]
    finally:
        if source is not sys.stdin:
            source.close()
    return [w.lower() for w in words] if lowercase else words


def _load_model_context(args: argparse.Namespace, lowercase: bool):
    model = load_model(args.model)
    wordlist = load_wordlist(args.wordlist, lowercase=lowercase)
    embeddings = load_vectors(args.embeddings)
    return model, model.context(embeddings, wordlist)


def _cmd_train(args: argparse.Namespace, settings: dict) -> int:
    train_words = load_wordlist(args.wordlist, lowercase=settings["lowercase"])
    gold = (
        load_gold(args.gold, lowercase=settings["lowercase"])
        if args.gold
        else GoldSegmentations()
    )
    embeddings = load_vectors(args.embeddings)
    model, _, report = run_training(
        train_words, gold, embeddings, _params_from_settings(settings)
    )
    save_model(model, args.model_out)
    print(
        f"trained: dim={model.dim} iterations={report.iterations} "
        f"objective={report.final_objective:.6f} "
        f"grad_norm={report.gradient_norm:.3g} converged={report.converged}",
        file=sys.stderr,
    )
    return 0


def _cmd_segment(args: argparse.Namespace, settings: dict) -> int:
    model, ctx = _load_model_context(args, settings["lowercase"])
    words = _read_words(args, settings["lowercase"])
    out = _open_out(args)
    try:
        for word, _, seg in segment_many(model, words, ctx, jobs=settings["jobs"]):
            out.write(f"{word}\t{' '.join(seg.segments)}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_chains(args: argparse.Namespace, settings: dict) -> int:
    model, ctx = _load_model_context(args, settings["lowercase"])
    words = _read_words(args, settings["lowercase"])
    out = _open_out(args)
    try:
        for word, chain, _ in segment_many(model, words, ctx, jobs=settings["jobs"]):
            steps = " ".join(f"{w}:{t.value}" for w, t in chain.steps)
            out.write(f"{word}\t{steps}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _write_diffs(path: str, results, gold) -> None:
    """Per-word mismatches for manual inspection: word, predicted, gold."""
    from .evaluation import analysis_boundaries

    with open(path, "w", encoding="utf-8") as out:
        for word, _, seg in results:
            if any(
                set(seg.boundaries) == analysis_boundaries(alt)
                for alt in gold.alternatives(word)
            ):
                continue
            alts = ", ".join(" ".join(alt) for alt in gold.alternatives(word))
            out.write(f"{word}\t{' '.join(seg.segments)}\t{alts}\n")


def _cmd_evaluate(args: argparse.Namespace, settings: dict) -> int:
    model, ctx = _load_model_context(args, settings["lowercase"])
    gold = load_gold(args.gold, lowercase=settings["lowercase"])
    results = segment_many(model, list(gold), ctx, jobs=settings["jobs"])
    score = evaluate_boundaries({w: seg for w, _, seg in results}, gold)
    if args.diffs:
        _write_diffs(args.diffs, results, gold)
    if args.affix_profile:
        profile = affix_frequency_profile(
            {w: (seg, chain) for w, chain, seg in results}
        )
        with open(args.affix_profile, "w", encoding="utf-8") as profile_out:
            for affix, count in profile:
                profile_out.write(f"{affix}\t{count}\n")
    out = _open_out(args)
    try:
        out.write(f"{score.precision:.6f}\t{score.recall:.6f}\t{score.f1:.6f}\n")
        out.write(
            f"{score.true_positives}\t{score.predicted_positives}\t{score.gold_positives}\n"
        )
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_induce_affixes(args: argparse.Namespace, settings: dict) -> int:
    wordlist = load_wordlist(args.wordlist, lowercase=settings["lowercase"])
    config = CandidateConfig.for_wordlist(
        wordlist,
        min_parent_ratio=settings["min_parent_ratio"],
        transformations_require_vocab=settings["transformations_require_vocab"],
    )
    inventory = induce_affix_inventory(
        wordlist, config, settings["k_suffixes"], settings["k_prefixes"]
    )
    sides = []
    if args.side in ("suffix", "both"):
        sides.append(inventory.suffixes)
    if args.side in ("prefix", "both"):
        sides.append(inventory.prefixes)
    out = _open_out(args)
    try:
        for listing in sides:
            for affix, count in listing:
                out.write(f"{affix}\t{count}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _candidate_from_triple(word: str, parent: str, type_name: str) -> Candidate:
    try:
        ctype = CandidateType(type_name)
    except ValueError:
        valid = ", ".join(t.value for t in CandidateType)
        raise DataError(f"unknown candidate type {type_name!r} (expected one of {valid})")
    if ctype is CandidateType.STOP:
        return STOP_CANDIDATE
    p = len(parent)
    derivable = False
    if not parent or p >= len(word):
        pass
    elif ctype is CandidateType.SUFFIX and word.startswith(parent):
        cand = Candidate(parent, ctype, word[p:])
        derivable = True
    elif ctype is CandidateType.PREFIX and word.endswith(parent):
        cand = Candidate(parent, ctype, word[: len(word) - p])
        derivable = True
    elif ctype is CandidateType.REPEAT and word.startswith(parent + parent[-1]):
        cand = Candidate(parent, ctype, word[p + 1 :], (parent[-1], ""))
        derivable = len(word) > p + 1
    elif ctype is CandidateType.DELETE and p >= 2 and word.startswith(parent[:-1]):
        cand = Candidate(parent, ctype, word[p - 1 :], (parent[-1], ""))
        derivable = True
    elif (
        ctype is CandidateType.MODIFY
        and p >= 2
        and word.startswith(parent[:-1])
        and len(word) > p
        and word[p - 1] != parent[-1]
    ):
        cand = Candidate(parent, ctype, word[p:], (parent[-1], word[p - 1]))
        derivable = True
    if not derivable:
        raise DataError(
            f"({parent!r}, {type_name}) is not derivable from {word!r}"
        )
    return cand


def _cmd_dump_features(args: argparse.Namespace, settings: dict) -> int:
    lowercase = settings["lowercase"]
    wordlist = load_wordlist(args.wordlist, lowercase=lowercase)
    embeddings = load_vectors(args.embeddings)
    if args.model:
        model = load_model(args.model)
        ctx = model.context(embeddings, wordlist)
    else:
        config = CandidateConfig.for_wordlist(
            wordlist,
            min_parent_ratio=settings["min_parent_ratio"],
            transformations_require_vocab=settings["transformations_require_vocab"],
        )
        inventory = induce_affix_inventory(
            wordlist, config, settings["k_suffixes"], settings["k_prefixes"]
        )
        correlations = build_affix_correlations(
            inventory, wordlist, config, settings["min_shared_stems"]
        )
        ctx = FeatureContext(embeddings, wordlist, inventory, correlations, config)
    word = args.word.lower() if lowercase else args.word
    parent = args.parent.lower() if lowercase and args.parent != "-" else args.parent
    cand = _candidate_from_triple(word, "" if parent == "-" else parent, args.type)
    named = extract_features(word, cand, ctx)
    out = _open_out(args)
    try:
        for name in sorted(named):
            out.write(f"{name}\t{named[name]:.6g}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_diagnose(args: argparse.Namespace, settings: dict) -> int:
    model, ctx = _load_model_context(args, settings["lowercase"])
    diag = distribution_diagnostics(model, ctx.wordlist, ctx)
    out = _open_out(args)
    try:
        out.write(f"avg_max_prob\t{diag.avg_max_prob:.6f}\n")
        out.write(f"avg_entropy\t{diag.avg_entropy:.6f}\n")
        out.write(f"avg_candidates\t{diag.avg_candidates:.6f}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_sweep(args: argparse.Namespace, settings: dict) -> int:
    try:
        thresholds = [int(t) for t in args.thresholds.split(",") if t.strip()]
    except ValueError:
        raise DataError(f"--thresholds must be comma-separated integers: {args.thresholds!r}")
    if not thresholds or any(t < 1 for t in thresholds):
        raise DataError("--thresholds must list integers >= 1")
    train_words = load_wordlist(args.wordlist, lowercase=settings["lowercase"])
    gold = load_gold(args.gold, lowercase=settings["lowercase"])
    embeddings = load_vectors(args.embeddings)
    rows = sweep_frequency_threshold(
        train_words, gold, embeddings, thresholds, _params_from_settings(settings)
    )
    out = _open_out(args)
    try:
        for threshold, vocab_size, precision, recall, f1 in rows:
            out.write(
                f"{threshold}\t{vocab_size}\t{precision:.6f}\t{recall:.6f}\t{f1:.6f}\n"
            )
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morphchains",
        description="Unsupervised morphological segmentation via parent-child chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, func, needs_model=False, needs_gold=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if needs_model:
            p.add_argument("--model", required=True, help="trained model file")
            p.add_argument("--wordlist", required=True, help="word<TAB>count file")
            p.add_argument("--embeddings", required=True, help="text-format word vectors")
        if needs_gold:
            p.add_argument("--gold", required=True, help="gold segmentations file")
        _add_common_options(p)
        _add_hyper_options(p)
        return p

    p_train = sub.add_parser("train", help="fit a model and write it to disk")
    p_train.set_defaults(func=_cmd_train)
    p_train.add_argument("--wordlist", required=True, help="word<TAB>count file")
    p_train.add_argument("--embeddings", required=True, help="text-format word vectors")
    p_train.add_argument("--gold", default=None,
                         help="gold file; its words join the training vocabulary")
    p_train.add_argument("--model-out", required=True, help="where to write the model")
    _add_common_options(p_train)
    _add_hyper_options(p_train)

    p_segment = add("segment", "segment words from stdin (or --words)", _cmd_segment,
                    needs_model=True)
    p_segment.add_argument("--words", default=None, help="input words, one per line")

    p_chains = add("chains", "print full derivation chains with step types", _cmd_chains,
                   needs_model=True)
    p_chains.add_argument("--words", default=None, help="input words, one per line")

    p_evaluate = add("evaluate", "score predictions against gold segmentation points",
                     _cmd_evaluate, needs_model=True, needs_gold=True)
    p_evaluate.add_argument("--affix-profile", default=None,
                            help="also write the predicted affix tally to this TSV file")
    p_evaluate.add_argument("--diffs", default=None,
                            help="also write mispredicted words (word, predicted, gold) "
                                 "to this TSV file for inspection")

    p_affixes = sub.add_parser("induce-affixes", help="print the induced affix inventory")
    p_affixes.set_defaults(func=_cmd_induce_affixes)
    p_affixes.add_argument("--wordlist", required=True, help="word<TAB>count file")
    p_affixes.add_argument("--side", choices=("suffix", "prefix", "both"), default="both",
                           help="which inventory to print (default both, suffixes first)")
    _add_common_options(p_affixes)
    _add_hyper_options(p_affixes)

    p_dump = sub.add_parser(
        "dump-features", help="print the named feature vector of one candidate"
    )
    p_dump.set_defaults(func=_cmd_dump_features)
    p_dump.add_argument("word", help="the derived word")
    p_dump.add_argument("parent", help="candidate parent ('-' for Stop)")
    p_dump.add_argument("type", help="Suffix|Prefix|Repeat|Delete|Modify|Stop")
    p_dump.add_argument("--wordlist", required=True, help="word<TAB>count file")
    p_dump.add_argument("--embeddings", required=True, help="text-format word vectors")
    p_dump.add_argument("--model", default=None,
                        help="use this model's induced structures instead of rebuilding")
    _add_common_options(p_dump)
    _add_hyper_options(p_dump)

    add("diagnose", "average peakedness of the candidate distributions",
        _cmd_diagnose, needs_model=True)

    p_sweep = sub.add_parser("sweep", help="retrain across frequency thresholds")
    p_sweep.set_defaults(func=_cmd_sweep)
    p_sweep.add_argument("--wordlist", required=True, help="word<TAB>count file")
    p_sweep.add_argument("--embeddings", required=True, help="text-format word vectors")
    p_sweep.add_argument("--gold", required=True, help="gold segmentations file")
    p_sweep.add_argument("--thresholds", required=True,
                         help="comma-separated frequency thresholds, e.g. 1,2,5")
    _add_common_options(p_sweep)
    _add_hyper_options(p_sweep)

    return parser


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        settings = _resolve_settings(args)
        _validate_settings(settings, parser)
        paths = {
            key: getattr(args, key, None)
            for key in ("wordlist", "embeddings", "gold", "model", "model_out", "out")
        }
        _echo_settings(settings, paths)
        return args.func(args, settings)
    except SystemExit as exc:
        return int(exc.code or 0)
    except MorphChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
