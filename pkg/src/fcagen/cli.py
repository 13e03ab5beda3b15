"""Command-line interface.

Subcommands: ``generate`` (write .cxt batches), ``ipi`` (measure
contexts into CSV), ``experiment`` (stego and distinct runs), and
``nullmodel`` (randomize a reference context). Every run prints its
root seed and writes a manifest sufficient to reproduce it exactly;
outputs are deterministic for a given manifest regardless of --jobs.

Exit codes: 0 success, 1 usage or configuration error, 2 I/O error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import multiprocessing
import os
import re
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .analytics import (
    contranominal_count,
    default_checkpoints,
    distinct_at_checkpoints,
    measure_batch,
    measure_contexts,
    pi_histogram,
)
from .context import read_burmeister, write_burmeister
from .generators import (
    DEFAULT_SCALE_FACTOR,
    GeneratorSpec,
    generate,
)
from .nullmodels import (
    DEFAULT_PRECISION_FACTOR,
    categorical_null,
    degree_distribution,
    dirichlet_null,
    permutation_null,
)
from .rng import RngState, split

OK = 0
USAGE_ERROR = 1
IO_ERROR = 2
INTERNAL_ERROR = 3

IPI_HEADER = "index,intents,pseudo_intents,contranominal,objects"
HISTOGRAM_HEADER = "pseudo_intents,count"
DISTINCT_HEADER = "checkpoint,distinct"
DEGREE_HEADER = "degree,reference,mean_output"

MODEL_ALIASES = {"varA": "dirichlet", "varB": "dirichlet"}
BETA_MODE_ALIASES = {"uniform-random": "uniform"}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _add_seed_jobs(parser):
    parser.add_argument("--seed", type=int, default=None,
                        help="root seed (default: generated and printed)")
    parser.add_argument("--jobs", type=_positive_int, default=1,
                        help="worker processes (outputs do not depend on this)")


def _add_generator_options(parser):
    parser.add_argument("--model", required=True,
                        choices=["direct", "indirect", "dirichlet", "varA", "varB"])
    parser.add_argument("--attributes", type=_positive_int, required=True)
    parser.add_argument("--beta-mode", dest="beta_mode", default=None,
                        choices=["base", "fixed", "uniform", "uniform-random", "scaled"])
    parser.add_argument("--beta", type=float, default=None)
    parser.add_argument("--c", type=float, default=None)
    parser.add_argument("--objects", type=int, default=None,
                        help="fixed object count (default: random per context)")


def _resolve_seed(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int.from_bytes(os.urandom(8), "little")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    print(f"seed={seed}")
    return seed


def build_spec(args, seed) -> GeneratorSpec:
    model = MODEL_ALIASES.get(args.model, args.model)
    beta_mode = args.beta_mode
    if args.model == "varA":
        beta_mode = "uniform"
    elif args.model == "varB":
        beta_mode = "scaled"
    elif beta_mode is None:
        beta_mode = "base"
    beta_mode = BETA_MODE_ALIASES.get(beta_mode, beta_mode)
    c = args.c
    if beta_mode == "scaled" and c is None:
        c = DEFAULT_SCALE_FACTOR
    return GeneratorSpec(
        model=model,
        attribute_count=args.attributes,
        beta_mode=beta_mode,
        beta=args.beta,
        c=c,
        object_count=args.objects,
        seed=seed,
    )


def _write_text(path: Path, text: str):
    with open(path, "w", newline="\n") as handle:
        handle.write(text)


def _write_manifest(path: Path, entries):
    lines = [f"{key}={value}" for key, value in entries if value is not None]
    _write_text(path, "\n".join(lines) + "\n")


def _spec_manifest_entries(command, spec, count):
    # --jobs is intentionally absent: it never affects outputs
    entries = [
        ("command", command),
        ("version", __version__),
        ("model", spec.model),
        ("attributes", spec.attribute_count),
        ("beta_mode", spec.beta_mode if spec.model == "dirichlet" else None),
        ("beta", spec.beta),
        ("c", spec.c),
        ("objects", spec.object_count),
        ("count", count),
        ("seed", spec.seed),
    ]
    entries.extend(
        (f"context_seed_{i}", split(spec.seed, i)) for i in range(count)
    )
    return entries


def _render_generated(args):
    spec, index = args
    return write_burmeister(generate(replace(spec, seed=split(spec.seed, index))))


def _render_batch(spec, count, jobs):
    tasks = [(spec, i) for i in range(count)]
    if jobs <= 1 or count < 2:
        return [_render_generated(t) for t in tasks]
    with multiprocessing.Pool(jobs) as pool:
        return pool.map(_render_generated, tasks, chunksize=max(1, count // (jobs * 8)))


def cmd_generate(args) -> int:
    seed = _resolve_seed(args)
    spec = build_spec(args, seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for index, text in enumerate(_render_batch(spec, args.count, args.jobs)):
        _write_text(out / f"ctx_{index}.cxt", text)
    _write_manifest(out / "manifest.txt",
                    _spec_manifest_entries("generate", spec, args.count))
    print(f"wrote {args.count} contexts to {out}")
    return OK


def _context_files(directory: Path):
    def sort_key(path):
        match = re.fullmatch(r"ctx_(\d+)\.cxt", path.name)
        return (0, int(match.group(1))) if match else (1, path.name)

    return sorted(directory.glob("*.cxt"), key=sort_key)


def _ipi_csv_lines(records):
    lines = [IPI_HEADER]
    for r in records:
        flag = "true" if r.contranominal else "false"
        lines.append(
            f"{r.context_index},{r.intents},{r.pseudo_intents},{flag},{r.object_count}"
        )
    return "\n".join(lines) + "\n"


def cmd_ipi(args) -> int:
    if args.input_dir is not None:
        directory = Path(args.input_dir)
        if not directory.is_dir():
            raise OSError(f"input directory not found: {directory}")
        contexts = [read_burmeister(p.read_text()) for p in _context_files(directory)]
        records = measure_contexts(contexts)
        entries = [("command", "ipi"), ("version", __version__),
                   ("input", str(directory)), ("count", len(records))]
    else:
        if args.model is None or args.count is None:
            raise ValueError("ipi needs either --in or --model/--attributes/--count")
        seed = _resolve_seed(args)
        spec = build_spec(args, seed)
        records = measure_batch(spec, args.count, jobs=args.jobs)
        entries = _spec_manifest_entries("ipi", spec, args.count)
    out = Path(args.out)
    if out.parent != Path("."):
        out.parent.mkdir(parents=True, exist_ok=True)
    _write_text(out, _ipi_csv_lines(records))
    _write_manifest(out.with_name(out.name + ".manifest.txt"), entries)
    return OK


def cmd_experiment_stego(args) -> int:
    seed = _resolve_seed(args)
    spec = build_spec(args, seed)
    records = measure_batch(spec, args.count, jobs=args.jobs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_text(out / "ipi.csv", _ipi_csv_lines(records))
    hist = pi_histogram(records, omit_zero=not args.keep_zero)
    lines = [HISTOGRAM_HEADER]
    lines.extend(f"{k},{hist[k]}" for k in sorted(hist))
    _write_text(out / "pseudo_intent_histogram.csv", "\n".join(lines) + "\n")
    cn = contranominal_count(records)
    summary = f"contranominal_count={cn}\n"
    _write_text(out / "summary.txt", summary)
    _write_manifest(out / "manifest.txt",
                    _spec_manifest_entries("experiment stego", spec, args.count))
    print(summary, end="")
    return OK


def cmd_experiment_distinct(args) -> int:
    seed = _resolve_seed(args)
    models = [m.strip() for m in args.models.split(",") if m.strip()]
    if not models:
        raise ValueError("--models must name at least one model")
    if args.checkpoints:
        checkpoints = tuple(int(c) for c in args.checkpoints.split(","))
    else:
        checkpoints = default_checkpoints(args.count)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = [("command", "experiment distinct"), ("version", __version__),
                ("attributes", args.attributes), ("count", args.count),
                ("models", ",".join(models)),
                ("checkpoints", ",".join(str(c) for c in checkpoints)),
                ("seed", seed)]
    for offset, name in enumerate(models):
        model_args = argparse.Namespace(
            model=name, attributes=args.attributes, beta_mode=None,
            beta=None, c=None, objects=None,
        )
        spec = build_spec(model_args, split(seed, offset))
        manifest.append((f"model_seed_{name}", spec.seed))
        records = measure_batch(spec, args.count, jobs=args.jobs)
        curve = distinct_at_checkpoints(records, checkpoints)
        lines = [DISTINCT_HEADER]
        lines.extend(f"{c},{d}" for c, d in zip(curve.checkpoints, curve.distinct))
        _write_text(out / f"distinct_{name}.csv", "\n".join(lines) + "\n")
    _write_manifest(out / "manifest.txt", manifest)
    return OK


def cmd_experiment(args) -> int:
    if args.kind == "stego":
        return cmd_experiment_stego(args)
    return cmd_experiment_distinct(args)


_NULL_METHODS = ("permute", "categorical", "dirichlet")


def cmd_nullmodel(args) -> int:
    reference_path = Path(args.reference)
    try:
        text = reference_path.read_text()
    except FileNotFoundError:
        raise OSError(f"reference context not found: {reference_path}") from None
    reference = read_burmeister(text)
    if reference.n_objects == 0:
        raise ValueError("reference context has no objects")
    seed = _resolve_seed(args)
    beta = args.beta
    if args.method == "dirichlet" and beta is None:
        beta = DEFAULT_PRECISION_FACTOR * (reference.n_attributes + 1)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ref_norm = degree_distribution(reference).normalized
    sums = [0.0] * len(ref_norm)
    for index in range(args.count):
        rng = RngState(split(seed, index))
        if args.method == "permute":
            randomized = permutation_null(reference, rng)
        elif args.method == "categorical":
            randomized = categorical_null(reference, rng)
        else:
            randomized = dirichlet_null(reference, rng, beta=beta)
        _write_text(out / f"null_{index}.cxt", write_burmeister(randomized))
        for degree, share in enumerate(degree_distribution(randomized).normalized):
            sums[degree] += share
    lines = [DEGREE_HEADER]
    lines.extend(
        f"{degree},{ref_norm[degree]!r},{sums[degree] / args.count!r}"
        for degree in range(len(ref_norm))
    )
    _write_text(out / "degree_comparison.csv", "\n".join(lines) + "\n")
    _write_manifest(out / "manifest.txt", [
        ("command", "nullmodel"), ("version", __version__),
        ("reference", str(reference_path)), ("method", args.method),
        ("beta", beta), ("count", args.count), ("seed", seed),
    ])
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fcagen",
                     description="Random formal context generation and measurement")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a batch of random .cxt files")
    _add_generator_options(p_gen)
    p_gen.add_argument("--count", type=_positive_int, required=True)
    p_gen.add_argument("--out", required=True)
    _add_seed_jobs(p_gen)
    p_gen.set_defaults(func=cmd_generate)

    p_ipi = sub.add_parser("ipi", help="measure contexts into an I-PI CSV")
    p_ipi.add_argument("--in", dest="input_dir", default=None,
                       help="directory of .cxt files to measure")
    p_ipi.add_argument("--model", default=None,
                       choices=["direct", "indirect", "dirichlet", "varA", "varB"])
    p_ipi.add_argument("--attributes", type=_positive_int, default=None)
    p_ipi.add_argument("--beta-mode", dest="beta_mode", default=None,
                       choices=["base", "fixed", "uniform", "uniform-random", "scaled"])
    p_ipi.add_argument("--beta", type=float, default=None)
    p_ipi.add_argument("--c", type=float, default=None)
    p_ipi.add_argument("--objects", type=int, default=None)
    p_ipi.add_argument("--count", type=_positive_int, default=None)
    p_ipi.add_argument("--out", required=True)
    _add_seed_jobs(p_ipi)
    p_ipi.set_defaults(func=cmd_ipi)

    p_exp = sub.add_parser("experiment", help="run a measurement experiment")
    exp_sub = p_exp.add_subparsers(dest="kind", required=True)

    p_stego = exp_sub.add_parser("stego", help="I-PI scatter data plus histogram")
    _add_generator_options(p_stego)
    p_stego.add_argument("--count", type=_positive_int, required=True)
    p_stego.add_argument("--keep-zero", action="store_true",
                         help="keep the zero bin in the histogram CSV")
    p_stego.add_argument("--out", required=True)
    _add_seed_jobs(p_stego)
    p_stego.set_defaults(func=cmd_experiment)

    p_dist = exp_sub.add_parser("distinct", help="distinct I-PI growth per model")
    p_dist.add_argument("--attributes", type=_positive_int, required=True)
    p_dist.add_argument("--count", type=_positive_int, required=True)
    p_dist.add_argument("--models", default="direct,varA,varB")
    p_dist.add_argument("--checkpoints", default=None,
                        help="comma-separated totals (default: log spaced)")
    p_dist.add_argument("--out", required=True)
    _add_seed_jobs(p_dist)
    p_dist.set_defaults(func=cmd_experiment)

    p_null = sub.add_parser("nullmodel", help="randomize a reference context")
    p_null.add_argument("--reference", required=True)
    p_null.add_argument("--method", required=True, choices=_NULL_METHODS)
    p_null.add_argument("--beta", type=float, default=None)
    p_null.add_argument("--count", type=_positive_int, required=True)
    p_null.add_argument("--out", required=True)
    _add_seed_jobs(p_null)
    p_null.set_defaults(func=cmd_nullmodel)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"fcagen: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"fcagen: io error: {exc}", file=sys.stderr)
        return IO_ERROR
    except (AssertionError, RuntimeError) as exc:
        print(f"fcagen: internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
