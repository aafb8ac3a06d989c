"""Command-line front end: ``apptechminer <command> ...``.

Intermediate artifacts are plain files (corpus JSON lines, CSV, the KB
document), so phases compose through files or shell pipes. ``-`` means
stdin for inputs and stdout for outputs.

Exit codes: 0 success, 1 usage or configuration error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
from pathlib import Path

from . import __version__
from . import pipeline
from .aan import convert as aan_convert
from .area_assign import assignments_to_csv
from .areas import areas_to_csv, read_areas_csv
from .config import describe_keys, load_config, parse_value
from .corpus import Corpus, build_corpus, dumps_corpus, load_corpus
from .errors import AppTechMinerError, ConfigError, DataError, FileUnreadable
from .kb import dumps_kb, load_kb, query_areas_for_technique, query_techniques
from .metrics import (AgreementMatrix, accuracy, cohens_kappa, precision_at_k,
                      read_label_map, read_phrase_list, recall_of_list)
from .synth import SynthConfig, generate_papers, write_ground_truth
from .technique_assign import technique_assignments_to_csv
from .techniques import GlobalTechniqueVector, rank_techniques, techniques_to_csv
from .temporal import buckets_to_csv, temporal_area_popularity, temporal_techniques_in_area

log = logging.getLogger("apptechminer")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(path, str(exc)) from exc


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(out).write_text(text, encoding="utf-8")
        log.info("wrote %s", out)


def _csv_rows(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _config(args):
    overrides = {}
    for item in args.set or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--set expects KEY=VALUE, got {item!r}")
        overrides[key.strip()] = parse_value(key.strip(), value)
    for key in ("threads", "scheme", "jm_lambda", "k1", "k2", "top_k", "window_years",
                "popularity", "lenient"):
        value = getattr(args, key, None)
        if value is not None and value is not False:
            overrides[key] = value
    return load_config(args.config, overrides)


def _corpus(path: str, cfg) -> Corpus:
    return load_corpus(path, cfg.corpus_config())


# subcommands

def cmd_ingest(args) -> int:
    cfg = _config(args)
    if args.from_aan:
        papers = aan_convert(args.corpus, args.network)
        corpus = build_corpus(papers, cfg.corpus_config())
    else:
        corpus = _corpus(args.corpus, cfg)
    n_ctx = len(corpus.contexts)
    log.info("%d papers, %d citation contexts, %d unresolved markers",
             len(corpus), n_ctx, corpus.unresolved_markers)
    for pid, refs in sorted(corpus.unresolved_refs.items()):
        log.debug("%s: unresolved references %s", pid, ",".join(refs))
    _emit(dumps_corpus(corpus.papers.values()), args.out)
    return EXIT_OK


def cmd_areas(args) -> int:
    cfg = _config(args)
    corpus = _corpus(args.corpus, cfg)
    keys, ranked = pipeline.extract_areas(corpus, cfg)
    if args.keywords_out:
        _emit(keys.dumps(), args.keywords_out)
    if args.top:
        ranked = ranked[:args.top]
    _emit(areas_to_csv(ranked), args.out)
    return EXIT_OK


def cmd_assign_areas(args) -> int:
    cfg = _config(args)
    corpus = _corpus(args.corpus, cfg)
    ranked = read_areas_csv(args.areas)
    _emit(assignments_to_csv(pipeline.assign_areas(corpus, ranked, cfg)), args.out)
    return EXIT_OK


def cmd_techniques(args) -> int:
    cfg = _config(args)
    corpus = _corpus(args.corpus, cfg)
    methods, vec = pipeline.extract_techniques(corpus, cfg)
    if args.method_papers_out:
        _emit(_csv_rows(["paper_id", "citation_count", "method_fraction"],
                        [[m.paper_id, m.citation_count, f"{m.method_citation_fraction:.6f}"]
                         for m in methods]), args.method_papers_out)
    _emit(techniques_to_csv(rank_techniques(vec, args.top or None)), args.out)
    return EXIT_OK


def _read_technique_vector(path: str) -> GlobalTechniqueVector:
    counts = {}
    for row in csv.DictReader(io.StringIO(_read_text(path))):
        try:
            counts[row["phrase"]] = int(row["count"])
        except (KeyError, ValueError) as exc:
            raise DataError(f"{path}: expected columns rank,phrase,count") from exc
    return GlobalTechniqueVector.from_counts(counts)


def cmd_assign_techniques(args) -> int:
    cfg = _config(args)
    corpus = _corpus(args.corpus, cfg)
    if args.techniques:
        vec = _read_technique_vector(args.techniques)
    else:
        _, vec = pipeline.extract_techniques(corpus, cfg)
    ids = None
    if args.papers:
        ids = sorted({p.strip() for p in args.papers.split(",") if p.strip()})
    result = pipeline.assign_techniques(corpus, vec, cfg, paper_ids=ids)
    _emit(technique_assignments_to_csv(result.values()), args.out)
    return EXIT_OK


def cmd_kb_build(args) -> int:
    cfg = _config(args)
    corpus = _corpus(args.corpus, cfg)
    kb = pipeline.build_kb(corpus, cfg)
    log.info("knowledge base: %d areas, %d techniques, %d method papers",
             len(kb.ranked_areas), len(kb.ranked_techniques), len(kb.method_papers))
    _emit(dumps_kb(kb), args.out)
    return EXIT_OK


def cmd_kb_query(args) -> int:
    kb = load_kb(args.kb)
    if args.area is not None:
        rows = query_techniques(kb, args.area, args.top)
        header = ["rank", "technique", "count"]
    else:
        rows = query_areas_for_technique(kb, args.technique, args.top)
        header = ["rank", "area", "count"]
    _emit(_csv_rows(header, [[i, p, c] for i, (p, c) in enumerate(rows, 1)]), args.out)
    return EXIT_OK


def cmd_temporal(args) -> int:
    cfg = _config(args)
    kb = load_kb(args.kb)
    corpus = _corpus(args.corpus, cfg)
    if (args.start is None) != (args.end is None):
        raise UsageError("--start and --end go together")
    year_range = (args.start, args.end) if args.start is not None else None
    if args.areas:
        buckets = temporal_area_popularity(kb, corpus, cfg.window_years, year_range,
                                           cfg.popularity)
    else:
        buckets = temporal_techniques_in_area(kb, corpus, args.techniques_in, cfg.window_years,
                                              args.top, year_range)
    _emit(buckets_to_csv(buckets), args.out)
    if args.plot:
        from .plotting import plot_area_popularity, plot_techniques_in_area
        if args.areas:
            plot_area_popularity(buckets, args.plot, top_n=args.top,
                                 title=f"area popularity ({cfg.popularity})")
        else:
            plot_techniques_in_area(buckets, args.plot, top_n=args.top,
                                    title=f"techniques in {args.techniques_in}")
        log.info("wrote %s", args.plot)
    return EXIT_OK


def cmd_eval(args) -> int:
    if args.kappa:
        value = cohens_kappa(AgreementMatrix.parse(args.kappa))
    else:
        if not args.gold:
            raise UsageError("--gold is required with --precision, --recall and --accuracy")
        if args.precision:
            value = precision_at_k(read_phrase_list(args.precision),
                                   set(read_phrase_list(args.gold)), args.k)
        elif args.recall:
            value = recall_of_list(set(read_phrase_list(args.recall)),
                                   set(read_phrase_list(args.gold)))
        else:
            value = accuracy(read_label_map(args.accuracy), read_label_map(args.gold))
    print(f"{value:.4f}")
    return EXIT_OK


def cmd_synth(args) -> int:
    config = SynthConfig(rng_seed=args.seed, n_areas=args.n_areas,
                         papers_per_area=args.papers_per_area,
                         n_method_papers=args.method_papers,
                         techniques_per_method_paper=args.techniques_per_method_paper,
                         year_range=(args.start, args.end), noise_rate=args.noise)
    papers, truth = generate_papers(config)
    _emit(dumps_corpus(papers), args.out)
    if args.truth_dir:
        for p in write_ground_truth(truth, args.truth_dir):
            log.info("wrote %s", p)
    return EXIT_OK


# parser

def _common(threads=True, corpus_opts=True) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="FILE",
                   help="config file of key = value lines (default: $APPTECHMINER_CONFIG)")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override one config key; repeatable")
    if threads:
        p.add_argument("--threads", type=int, metavar="N", help="worker threads")
    if corpus_opts:
        p.add_argument("--lenient", action="store_true",
                       help="skip malformed corpus records instead of failing")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more logging on stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    epilog = describe_keys()
    fmt = argparse.RawDescriptionHelpFormatter
    parser = _Parser(prog="apptechminer", formatter_class=fmt, epilog=epilog,
                     description="Mine application areas and techniques from a paper corpus.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    common = _common()

    def add(name, func, help_text, parents=(common,), subparsers=sub):
        p = subparsers.add_parser(name, parents=list(parents), help=help_text,
                                  description=help_text, epilog=epilog, formatter_class=fmt)
        p.set_defaults(func=func)
        return p

    p = add("ingest", cmd_ingest, "validate a corpus and write it in canonical form")
    p.add_argument("corpus", help="corpus file (or AAN metadata file with --from-aan); - for stdin")
    p.add_argument("--from-aan", action="store_true",
                   help="read AAN acl-metadata.txt instead of the corpus format")
    p.add_argument("--network", metavar="FILE", help="AAN citation network ('A ==> B' lines)")
    p.add_argument("-o", "--out", default="-")

    p = add("areas", cmd_areas, "phase 1: ranked list of application areas (CSV)")
    p.add_argument("corpus")
    p.add_argument("--scheme", choices=("S1", "S2", "S3"))
    p.add_argument("--top", type=int, default=0, help="keep only the top N rows")
    p.add_argument("--keywords-out", metavar="FILE",
                   help="also write the bootstrapped functional keywords")
    p.add_argument("-o", "--out", default="-")

    p = add("assign-areas", cmd_assign_areas, "phase 2: one area per paper (CSV)")
    p.add_argument("corpus")
    p.add_argument("--areas", required=True, metavar="CSV", help="ranked-area CSV from 'areas'")
    p.add_argument("--jm-lambda", dest="jm_lambda", type=float)
    p.add_argument("-o", "--out", default="-")

    p = add("techniques", cmd_techniques, "phase 3: global ranked list of techniques (CSV)")
    p.add_argument("corpus")
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=float)
    p.add_argument("--top", type=int, default=0, help="keep only the top N rows (0 = all)")
    p.add_argument("--method-papers-out", metavar="FILE",
                   help="also write detected method papers")
    p.add_argument("-o", "--out", default="-")

    p = add("assign-techniques", cmd_assign_techniques,
            "phase 4: top-K techniques per cited paper (CSV)")
    p.add_argument("corpus")
    p.add_argument("--techniques", metavar="CSV",
                   help="full technique CSV from 'techniques' (recomputed when omitted)")
    p.add_argument("--papers", metavar="ID,ID", help="restrict to these paper ids")
    p.add_argument("-k", "--top-k", dest="top_k", type=int)
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=float)
    p.add_argument("-o", "--out", default="-")

    kb = sub.add_parser("kb", help="build or query the knowledge base",
                        description="build or query the knowledge base",
                        epilog=epilog, formatter_class=fmt)
    kb_sub = kb.add_subparsers(dest="kb_command", metavar="ACTION", parser_class=_Parser)
    kb_sub.required = True
    p = add("build", cmd_kb_build, "run all phases and write the knowledge base document",
            subparsers=kb_sub)
    p.add_argument("corpus")
    p.add_argument("--scheme", choices=("S1", "S2", "S3"))
    p.add_argument("--jm-lambda", dest="jm_lambda", type=float)
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=float)
    p.add_argument("-k", "--top-k", dest="top_k", type=int)
    p.add_argument("-o", "--out", default="-")

    p = add("query", cmd_kb_query, "techniques used in an area, or areas using a technique",
            parents=(_common(threads=False, corpus_opts=False),), subparsers=kb_sub)
    p.add_argument("kb", help="knowledge base file")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--area")
    which.add_argument("--technique")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("-o", "--out", default="-")

    p = add("temporal", cmd_temporal, "year-bucketed area popularity or techniques in an area")
    p.add_argument("kb", help="knowledge base file")
    p.add_argument("corpus", help="the corpus the knowledge base was built from")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--areas", action="store_true", help="area popularity per bucket")
    which.add_argument("--techniques-in", metavar="AREA", help="top techniques per bucket")
    p.add_argument("--window", dest="window_years", type=int, help="bucket width in years")
    p.add_argument("--start", type=int, help="first year (default: earliest in corpus)")
    p.add_argument("--end", type=int, help="last year (default: latest in corpus)")
    p.add_argument("--popularity", choices=("papers", "citations"))
    p.add_argument("--top", type=int, default=10,
                   help="techniques per bucket, or areas drawn in the plot")
    p.add_argument("--plot", metavar="PNG", help="also render a figure to this file")
    p.add_argument("-o", "--out", default="-")

    p = add("eval", cmd_eval, "precision@K, recall, accuracy or Cohen's kappa",
            parents=(_common(threads=False, corpus_opts=False),))
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--precision", metavar="RANKED_CSV")
    which.add_argument("--recall", metavar="EXTRACTED_CSV")
    which.add_argument("--accuracy", metavar="PRED_CSV")
    which.add_argument("--kappa", metavar="YY,YN,NY,NN")
    p.add_argument("--gold", metavar="CSV")
    p.add_argument("-k", type=int, default=25, help="cutoff for --precision")

    p = add("synth", cmd_synth, "generate a synthetic corpus with ground truth",
            parents=(_common(threads=False, corpus_opts=False),))
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--areas", dest="n_areas", type=int, default=5)
    p.add_argument("--papers-per-area", type=int, default=20)
    p.add_argument("--method-papers", type=int, default=10)
    p.add_argument("--techniques-per-method-paper", type=int, default=1)
    p.add_argument("--start", type=int, default=1990)
    p.add_argument("--end", type=int, default=2013)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--truth-dir", metavar="DIR", help="write ground-truth CSVs here")
    p.add_argument("-o", "--out", default="-")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"apptechminer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, AppTechMinerError) as exc:
        print(f"apptechminer: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)
