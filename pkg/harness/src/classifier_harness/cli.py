"""Command line front end: ``harness train`` and ``harness eval``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path


def _cmd_train(args: argparse.Namespace) -> int:
    from .models import HeadConfig
    from .training import train

    config = HeadConfig(
        backbone=args.backbone,
        weights=args.weights,
        learning_rate=args.learning_rate,
        batch_size=args.batch_size,
    )
    _, report = train(
        args.manifest,
        config,
        epochs=args.epochs,
        seed=args.seed,
        out_dir=args.out,
    )
    json.dump(report.to_json_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    from tensorflow import keras

    from .reports import plot_confusion
    from .training import evaluate

    model = keras.models.load_model(args.model)
    report = evaluate(model, args.manifest, split=args.split)
    if args.out is not None:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        report.save(out_dir / "report.json")
        plot_confusion(
            report.matrix(args.split),
            out_dir / f"confusion_{args.split}.png",
            title=args.split,
        )
    json.dump(report.to_json_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harness",
        description="Train and evaluate a real-vs-mutated structure image classifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="fine-tune a backbone on a dataset manifest")
    p_train.add_argument("--manifest", required=True, help="path to manifest.json")
    p_train.add_argument("--backbone", default="InceptionV3", help="backbone architecture name")
    p_train.add_argument("--epochs", type=int, default=10)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--weights", default="imagenet", choices=("imagenet", "random"))
    p_train.add_argument("--learning-rate", type=float, default=1e-4)
    p_train.add_argument("--batch-size", type=int, default=16)
    p_train.add_argument("--out", default=None, help="directory for model, report and plots")
    p_train.set_defaults(func=_cmd_train)

    p_eval = sub.add_parser("eval", help="evaluate a saved model on a manifest split")
    p_eval.add_argument("--model", required=True, help="path to a saved .keras model")
    p_eval.add_argument("--manifest", required=True, help="path to manifest.json")
    p_eval.add_argument("--split", default="test")
    p_eval.add_argument("--out", default=None, help="directory for report and plot")
    p_eval.set_defaults(func=_cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # argparse handles usage errors with exit 2
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
