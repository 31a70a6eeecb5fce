"""Headless driver: single training runs, full catalog sweeps, and the service.

Exit codes: 0 success, 2 usage error (bad flags or out-of-range values),
3 unknown catalog id, 4 environment failure (port busy, no permission).

Every flag default can be overridden by an ENCODERLAB_* environment
variable (ENCODERLAB_EPOCHS, ENCODERLAB_LR, ENCODERLAB_SEED, ...); an
explicit flag always wins.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import socket
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__, analysis, datasets, encoders, training
from .errors import ConfigurationError, ContractError, NotFoundError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNKNOWN_ID = 3
EXIT_ENVIRONMENT = 4

_ENV_PREFIX = "ENCODERLAB_"


def _env(name: str, fallback, cast):
    raw = os.environ.get(_ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        print(f"error: {_ENV_PREFIX}{name}={raw!r} is not a valid {cast.__name__}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="encoderlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"encoderlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_training_flags(p: argparse.ArgumentParser, with_pair: bool):
        if with_pair:
            p.add_argument("--dataset", default=_env("DATASET", None, str), help="dataset id (e.g. D1-vstripes)")
            p.add_argument("--encoder", default=_env("ENCODER", None, str), help="encoder id (e.g. E01)")
        p.add_argument("--epochs", type=int, default=_env("EPOCHS", 100, int))
        p.add_argument("--lr", type=float, default=_env("LR", 0.5, float))
        p.add_argument("--seed", type=int, default=_env("SEED", 7, int))
        p.add_argument("--resolution", type=int, default=_env("RESOLUTION", 16, int))
        p.add_argument("--out", default=_env("OUT", "./encoderlab-out", str), help="output directory")
        p.add_argument(
            "--target-accuracy",
            type=float,
            default=_env("TARGET_ACCURACY", None, float),
            help="stop a run early once accuracy reaches this value",
        )

    run_p = sub.add_parser("run", help="train one (dataset, encoder) configuration")
    add_training_flags(run_p, with_pair=True)
    run_p.set_defaults(func=cmd_run)

    sweep_p = sub.add_parser("sweep", help="train every dataset × encoder pair")
    add_training_flags(sweep_p, with_pair=False)
    sweep_p.add_argument(
        "--parallelism", type=int, default=_env("PARALLELISM", os.cpu_count() or 1, int)
    )
    sweep_p.set_defaults(func=cmd_sweep)

    serve_p = sub.add_parser("serve", help="launch the HTTP session service")
    serve_p.add_argument("--host", default=_env("HOST", "127.0.0.1", str))
    serve_p.add_argument("--port", type=int, default=_env("PORT", 8642, int))
    serve_p.add_argument("--ui-dir", default=_env("UI_DIR", None, str), help="static web UI bundle to serve under /")
    serve_p.add_argument(
        "--snapshot-dir",
        default=_env("SNAPSHOT_DIR", None, str),
        help="dump each finished session's records as JSON here",
    )
    serve_p.set_defaults(func=cmd_serve)
    return parser


def _run_one(config: training.TrainingConfig, target_accuracy: float | None):
    """Train one configuration, optionally stopping early; returns its records."""
    records: list[training.EpochRecord] = []
    control = training.RunControl() if target_accuracy is not None else None

    def emit(record: training.EpochRecord) -> None:
        records.append(record)
        if target_accuracy is not None and record.accuracy >= target_accuracy:
            control.request_stop()

    training.train(config, control=control, emit=emit)
    return records


def _epochs_to_90pct(records) -> int | None:
    for record in records:
        if record.accuracy >= 0.90:
            return record.epoch
    return None


def cmd_run(args) -> int:
    if not args.dataset or not args.encoder:
        print("error: run requires --dataset and --encoder", file=sys.stderr)
        return EXIT_USAGE
    config = training.TrainingConfig(
        dataset_id=args.dataset,
        encoder_id=args.encoder,
        epochs=args.epochs,
        learning_rate=args.lr,
        seed=args.seed,
        resolution=args.resolution,
    )
    config.validate()
    encoder = encoders.get_encoder(config.encoder_id)
    grid = datasets.generate(config.dataset_id, config.resolution)

    records = _run_one(config, args.target_accuracy)
    final = records[-1]
    model, points = analysis.comparison_map(encoder, grid)
    separation = analysis.separation_score(points)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "epochs.jsonl", "w") as fh:
        for record in records:
            fh.write(json.dumps(record.to_json()) + "\n")
    map_doc = encoders.encoder_map(encoder, config.resolution).to_json()
    (out / "encoder_map.json").write_text(
        json.dumps({"encoder_id": config.encoder_id, "dataset_id": config.dataset_id, **map_doc})
    )
    (out / "comparison_map.json").write_text(
        json.dumps(
            {
                "encoder_id": config.encoder_id,
                "dataset_id": config.dataset_id,
                "resolution": config.resolution,
                **analysis.comparison_to_json(model, points),
            }
        )
    )
    (out / "summary.json").write_text(
        json.dumps(
            {
                "config": config.to_json(),
                "engine_version": __version__,
                "epochs_run": final.epoch,
                "final_loss": final.loss,
                "final_accuracy": final.accuracy,
                "epochs_to_90pct": _epochs_to_90pct(records),
                "separation_score": separation,
            }
        )
    )
    print(
        f"run complete: {config.dataset_id} + {config.encoder_id} "
        f"accuracy={final.accuracy:.4f} loss={final.loss:.4f} ({final.epoch} epochs) -> {out}"
    )
    return EXIT_OK


def pair_seed(base_seed: int, dataset_id: str, encoder_id: str) -> int:
    """Stable per-pair seed: adding catalog entries never shifts existing pairs."""
    digest = hashlib.sha256(f"{base_seed}:{dataset_id}:{encoder_id}".encode()).digest()
    return int.from_bytes(digest[:4], "big")


def cmd_sweep(args) -> int:
    base = training.TrainingConfig("D1-vstripes", "E01", args.epochs, args.lr, args.seed, args.resolution)
    base.validate()
    datasets.generate("D1-vstripes", args.resolution)  # range-check resolution once

    def job(pair):
        dataset_id, encoder_id = pair
        config = training.TrainingConfig(
            dataset_id=dataset_id,
            encoder_id=encoder_id,
            epochs=args.epochs,
            learning_rate=args.lr,
            seed=pair_seed(args.seed, dataset_id, encoder_id),
            resolution=args.resolution,
        )
        records = _run_one(config, args.target_accuracy)
        final = records[-1]
        model, points = analysis.comparison_map(
            encoders.get_encoder(encoder_id), datasets.generate(dataset_id, args.resolution)
        )
        return {
            "dataset_id": dataset_id,
            "encoder_id": encoder_id,
            "final_accuracy": final.accuracy,
            "final_loss": final.loss,
            "epochs_to_90pct": _epochs_to_90pct(records),
            "separation_score": analysis.separation_score(points),
        }

    pairs = [(d, e) for d in datasets.DATASET_IDS for e in encoders.ENCODER_IDS]
    workers = max(1, args.parallelism)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(job, pairs))
    rows.sort(key=lambda r: (r["dataset_id"], -r["final_accuracy"], r["encoder_id"]))

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    columns = ["dataset_id", "encoder_id", "final_accuracy", "final_loss", "epochs_to_90pct", "separation_score"]
    with open(out / "sweep.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(["" if row[c] is None else repr(row[c]) if isinstance(row[c], float) else row[c] for c in columns])
    (out / "sweep.json").write_text(
        json.dumps(
            {
                "metadata": {
                    "seed": args.seed,
                    "resolution": args.resolution,
                    "learning_rate": args.lr,
                    "epochs": args.epochs,
                    "engine_version": __version__,
                },
                "rows": rows,
            }
        )
    )
    print(f"sweep complete: {len(rows)} rows -> {out}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        try:
            probe.bind((args.host, args.port))
        finally:
            probe.close()
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port} ({exc})", file=sys.stderr)
        return EXIT_ENVIRONMENT

    app = create_app(snapshot_dir=args.snapshot_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_ID
    except (ConfigurationError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
