"""Command-line pipeline: generate, label, featurize, encode, split, train,
evaluate, plus one-off Groebner and distance queries.

Outputs are deterministic for identical flags and inputs.  Train and eval
write delimited reports and, by default, render matplotlib figures next to
them (disable with --no-figures).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__, dataset_io
from .algebra import DimensionError
from .encoding import (
    MalformedEncodingError,
    encode_flat,
    euclidean_distance,
)
from .groebner import BuchbergerOptions, BudgetExceededError, buchberger
from .learning import (
    NetworkConfig,
    evaluate,
    fit_linear_regression,
    load_model,
    save_model,
    train,
    write_training_curve,
)
from .learning.linear import LinearModel
from .learning.network import NeuralNet
from .pipeline import (
    WORKERS_ENV_VAR,
    default_workers,
    featurize_samples,
    label_samples,
)
from .sampler import RandomModel, sample_ideal

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 3
EXIT_BUDGET = 4
EXIT_SHAPE = 5

_MODE_FLAGS = {"exact": "exact_degree", "upto": "up_to_degree"}


class ShapeMismatchError(ValueError):
    pass


def _progress(stream, every: int = 500):
    def report(done: int, total: int):
        if done % every == 0 or done == total:
            stream.write(f"\r{done}/{total}")
            stream.flush()
            if done == total:
                stream.write("\n")
    return report


def cmd_generate(args) -> int:
    model = RandomModel(
        n=args.n, d=args.d, s=args.s, mode=_MODE_FLAGS[args.mode], seed=args.seed
    )
    samples = [sample_ideal(model, i) for i in range(args.count)]
    dataset_io.write_ideals(samples, model, args.out)
    print(f"wrote {args.count} ideals to {args.out}")
    return EXIT_OK


def cmd_label(args) -> int:
    samples, header = dataset_io.read_ideals(args.ideals)
    labels, quarantine = label_samples(
        samples, max_pairs=args.max_pairs, workers=args.workers
    )
    good = [lab for lab in labels if lab is not None]
    dataset_io.write_labels(good, args.out, header=header)
    quarantine_path = args.quarantine or args.out + ".quarantine"
    dataset_io.write_quarantine(quarantine, quarantine_path)
    print(
        f"labeled {len(good)} of {len(samples)} ideals -> {args.out} "
        f"({len(quarantine)} quarantined -> {quarantine_path})"
    )
    return EXIT_OK


def cmd_features(args) -> int:
    samples, _ = dataset_io.read_ideals(args.ideals)
    rows, quarantine = featurize_samples(
        samples, max_pairs=args.max_pairs, workers=args.workers
    )
    from .encoding import FeatureVector

    good = [FeatureVector(*row) for row in rows if row is not None]
    dataset_io.write_features(good, args.out)
    quarantine_path = args.quarantine or args.out + ".quarantine"
    dataset_io.write_quarantine(quarantine, quarantine_path)
    print(
        f"featurized {len(good)} of {len(samples)} ideals -> {args.out} "
        f"({len(quarantine)} quarantined -> {quarantine_path})"
    )
    return EXIT_OK


def cmd_encode(args) -> int:
    samples, header = dataset_io.read_ideals(args.ideals)
    with open(args.out, "w", encoding="utf-8") as fh:
        for line in header.lines():
            fh.write(line + "\n")
        for sample in samples:
            fh.write(
                ",".join(str(v) for v in encode_flat(sample, canonical=args.canonical))
                + "\n"
            )
    print(f"encoded {len(samples)} ideals -> {args.out}")
    return EXIT_OK


def cmd_split(args) -> int:
    _, header = dataset_io.read_ideals(args.ideals)
    train_idx, test_idx = dataset_io.split_dataset(
        header.count, test_fraction=args.test_fraction, seed=args.seed
    )
    dataset_io.write_indices(train_idx, args.train_out)
    dataset_io.write_indices(test_idx, args.test_out)
    print(f"split {header.count} rows into {len(train_idx)} train / {len(test_idx)} test")
    return EXIT_OK


def _load_inputs(path):
    """Returns (matrix_inputs or None, flat_inputs, input_scale).

    Ideals files give both the s x 2n matrices (for the network) and their
    flattened rows (for linear regression); feature CSVs only the latter.
    """
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline()
    if first.startswith("#"):
        samples, header = dataset_io.read_ideals(path)
        flat = np.array([encode_flat(s) for s in samples], dtype=float)
        mats = flat.reshape(len(samples), header.s, 2 * header.n)
        return mats, flat, float(header.d)
    rows = dataset_io.read_features(path)
    return None, np.array(rows, dtype=float), 1.0


def _select_target(labels, target: str) -> np.ndarray:
    col = 0 if target == "size" else 1
    return np.array([lab[col] for lab in labels], dtype=float)


def _apply_quarantine(args, n_rows):
    if not args.quarantine:
        return None
    dropped = {index for index, _ in dataset_io.read_quarantine(args.quarantine)}
    return [i for i in range(n_rows) if i not in dropped]


def cmd_train(args) -> int:
    mats, flat, scale = _load_inputs(args.inputs)
    labels = dataset_io.read_labels(args.labels)
    y_all = _select_target(labels, args.target)

    keep = _apply_quarantine(args, flat.shape[0])
    if keep is not None:
        flat = flat[keep]
        if mats is not None:
            mats = mats[keep]
    if flat.shape[0] != y_all.shape[0]:
        raise ShapeMismatchError(
            f"{flat.shape[0]} input rows vs {y_all.shape[0]} labels "
            "(pass --quarantine to drop unlabeled rows)"
        )

    train_idx, test_idx = dataset_io.split_dataset(
        flat.shape[0], test_fraction=args.test_fraction, seed=args.split_seed
    )
    if args.indices_out:
        dataset_io.write_indices(test_idx, args.indices_out)

    curve = None
    if args.model == "linreg":
        model = fit_linear_regression(flat[train_idx], y_all[train_idx])
        pred = model.predict(flat[test_idx])
    else:
        if mats is None:
            raise ShapeMismatchError(
                "the network expects an ideals/encodings file, not a feature CSV"
            )
        config = NetworkConfig(
            input_rows=mats.shape[1],
            input_cols=mats.shape[2],
            conv_filters=args.conv_filters,
            dense_sizes=(args.dense, args.dense),
            dropout_rate=args.dropout,
            learning_rate=args.learning_rate,
            batch_size=args.batch_size,
            epochs=args.epochs,
            seed=args.seed,
            input_scale=1.0 if args.no_normalize else scale,
        )
        progress = None
        if not args.quiet:
            progress = lambda e, tl, vl: print(
                f"epoch {e}/{config.epochs} train_loss={tl:.4f} val_loss={vl:.4f}"
            )
        model, curve = train(config, mats[train_idx], y_all[train_idx], progress=progress)
        pred = model.predict(mats[test_idx])
        if args.curve_out:
            write_training_curve(curve, args.curve_out)

    save_model(model, args.model_out)
    report = evaluate(pred, y_all[test_idx])
    print(
        f"test r^2={report.r_squared:.4f} overshoot={report.overshoot_rate:.4f} "
        f"accuracy={report.accuracy:.4f} n={report.n_samples}"
    )
    if args.report_out:
        with open(args.report_out, "w", encoding="utf-8") as fh:
            fh.write(report.as_csv())
    if not args.no_figures:
        from . import plotting

        base, _ = os.path.splitext(args.report_out or args.model_out)
        if curve is not None:
            plotting.save_training_curve(curve, base + ".curve.png")
        plotting.save_prediction_scatter(
            pred, y_all[test_idx], base + ".scatter.png",
            title=f"{args.model} / {args.target}",
        )
    return EXIT_OK


def cmd_eval(args) -> int:
    model = load_model(args.model)
    mats, flat, _ = _load_inputs(args.inputs)
    labels = dataset_io.read_labels(args.labels)
    y = _select_target(labels, args.target)

    if args.indices:
        idx = dataset_io.read_indices(args.indices)
        flat = flat[idx]
        if mats is not None:
            mats = mats[idx]
        y = y[idx]
    if flat.shape[0] != y.shape[0]:
        raise ShapeMismatchError(f"{flat.shape[0]} input rows vs {y.shape[0]} labels")

    if isinstance(model, NeuralNet):
        if mats is None:
            raise ShapeMismatchError("network model needs ideal-matrix inputs")
        pred = model.predict(mats)
    elif isinstance(model, LinearModel):
        pred = model.predict(flat)
    else:
        raise ShapeMismatchError(f"unsupported model type {type(model).__name__}")

    report = evaluate(pred, y)
    print(
        f"r^2={report.r_squared:.4f} overshoot={report.overshoot_rate:.4f} "
        f"accuracy={report.accuracy:.4f} n={report.n_samples}"
    )
    if args.report_out:
        with open(args.report_out, "w", encoding="utf-8") as fh:
            fh.write(report.as_csv())
        if not args.no_figures:
            from . import plotting

            base, _ = os.path.splitext(args.report_out)
            plotting.save_prediction_scatter(pred, y, base + ".scatter.png")
    return EXIT_OK


def cmd_gb(args) -> int:
    samples, _ = dataset_io.read_ideals(args.ideals)
    if not 0 <= args.index < len(samples):
        raise ShapeMismatchError(f"index {args.index} out of range [0, {len(samples)})")
    sample = samples[args.index]
    opts = BuchbergerOptions(max_pairs=args.max_pairs)
    result = buchberger([g.to_polynomial() for g in sample.gens], opts)
    for g in result.basis:
        print(g)
    print(
        f"# cardinality={result.cardinality} max_total_degree={result.max_total_degree} "
        f"pairs={result.pairs_processed}"
    )
    return EXIT_OK


def cmd_distance(args) -> int:
    samples, _ = dataset_io.read_ideals(args.ideals)
    for k in (args.i, args.j):
        if not 0 <= k < len(samples):
            raise ShapeMismatchError(f"index {k} out of range [0, {len(samples)})")
    u = encode_flat(samples[args.i])
    v = encode_flat(samples[args.j])
    print(euclidean_distance(u, v))
    return EXIT_OK


def _read_config_defaults(path):
    defaults = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            defaults[key.strip().replace("-", "_")] = value.strip()
    return defaults


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gbpredict",
        description="Random binomial ideals, Groebner complexity labels, and "
        "models that predict them.",
    )
    parser.add_argument("--version", action="version", version=f"gbpredict {__version__}")
    parser.add_argument(
        "--config", default=None,
        help="key=value file of flag defaults; explicit flags win",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = []

    gen = sub.add_parser("generate", help="sample a random binomial-ideal dataset")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--s", type=int, required=True)
    gen.add_argument("--mode", choices=sorted(_MODE_FLAGS), default="exact")
    gen.add_argument("--count", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)
    subparsers.append(gen)

    lab = sub.add_parser("label", help="compute reduced-basis labels for a dataset")
    lab.add_argument("--ideals", required=True)
    lab.add_argument("--out", required=True)
    lab.add_argument("--quarantine", default=None)
    lab.add_argument("--workers", type=int, default=default_workers(),
                     help=f"default from ${WORKERS_ENV_VAR} or 1")
    lab.add_argument("--max-pairs", type=int, default=None)
    lab.set_defaults(func=cmd_label)
    subparsers.append(lab)

    feat = sub.add_parser("features", help="compute engineered feature rows")
    feat.add_argument("--ideals", required=True)
    feat.add_argument("--out", required=True)
    feat.add_argument("--quarantine", default=None)
    feat.add_argument("--workers", type=int, default=default_workers())
    feat.add_argument("--max-pairs", type=int, default=None)
    feat.set_defaults(func=cmd_features)
    subparsers.append(feat)

    enc = sub.add_parser("encode", help="re-emit flat encodings, optionally canonical")
    enc.add_argument("--ideals", required=True)
    enc.add_argument("--out", required=True)
    enc.add_argument("--canonical", action="store_true")
    enc.set_defaults(func=cmd_encode)
    subparsers.append(enc)

    spl = sub.add_parser("split", help="write train/test row-index files")
    spl.add_argument("--ideals", required=True)
    spl.add_argument("--test-fraction", type=float, default=0.2)
    spl.add_argument("--seed", type=int, default=0)
    spl.add_argument("--train-out", required=True)
    spl.add_argument("--test-out", required=True)
    spl.set_defaults(func=cmd_split)
    subparsers.append(spl)

    tr = sub.add_parser("train", help="fit a model and report held-out metrics")
    tr.add_argument("--inputs", required=True, help="ideals file or feature CSV")
    tr.add_argument("--labels", required=True)
    tr.add_argument("--target", choices=["size", "maxdeg"], required=True)
    tr.add_argument("--model", choices=["nn", "linreg"], required=True)
    tr.add_argument("--model-out", required=True)
    tr.add_argument("--report-out", default=None)
    tr.add_argument("--curve-out", default=None)
    tr.add_argument("--indices-out", default=None, help="write the test row indices")
    tr.add_argument("--quarantine", default=None)
    tr.add_argument("--test-fraction", type=float, default=0.2)
    tr.add_argument("--split-seed", type=int, default=0)
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--epochs", type=int, default=100)
    tr.add_argument("--batch-size", type=int, default=128)
    tr.add_argument("--learning-rate", type=float, default=1e-3)
    tr.add_argument("--dropout", type=float, default=0.5)
    tr.add_argument("--conv-filters", type=int, default=300)
    tr.add_argument("--dense", type=int, default=500)
    tr.add_argument("--no-normalize", action="store_true")
    tr.add_argument("--no-figures", action="store_true")
    tr.add_argument("--quiet", action="store_true")
    tr.set_defaults(func=cmd_train)
    subparsers.append(tr)

    ev = sub.add_parser("eval", help="evaluate a saved model")
    ev.add_argument("--model", required=True)
    ev.add_argument("--inputs", required=True)
    ev.add_argument("--labels", required=True)
    ev.add_argument("--target", choices=["size", "maxdeg"], required=True)
    ev.add_argument("--indices", default=None, help="row-index file to evaluate on")
    ev.add_argument("--report-out", default=None)
    ev.add_argument("--no-figures", action="store_true")
    ev.set_defaults(func=cmd_eval)
    subparsers.append(ev)

    gb = sub.add_parser("gb", help="print the reduced basis of one ideal")
    gb.add_argument("--ideals", required=True)
    gb.add_argument("--index", type=int, required=True)
    gb.add_argument("--max-pairs", type=int, default=None)
    gb.set_defaults(func=cmd_gb)
    subparsers.append(gb)

    dist = sub.add_parser("distance", help="Euclidean distance between two rows")
    dist.add_argument("--ideals", required=True)
    dist.add_argument("--i", type=int, required=True)
    dist.add_argument("--j", type=int, required=True)
    dist.set_defaults(func=cmd_distance)
    subparsers.append(dist)

    return parser, subparsers


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()

    # Config file sets flag defaults; explicit flags still win.
    if "--config" in argv:
        cfg_path = argv[argv.index("--config") + 1]
        raw = _read_config_defaults(cfg_path)
        for sp in subparsers:
            typed = {}
            for action in sp._actions:
                if action.dest in raw and action.dest != "help":
                    value = raw[action.dest]
                    typed[action.dest] = action.type(value) if action.type else value
                    action.required = False
            sp.set_defaults(**typed)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (dataset_io.DatasetFormatError, MalformedEncodingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ShapeMismatchError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
