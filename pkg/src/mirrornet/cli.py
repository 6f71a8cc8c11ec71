"""Command line front end.

Subcommands: synth, train, reconstruct, calibrate, classify, dispatch,
gradcheck. Exit codes: 0 success (or ACCEPT / winner found), 1 negative
verdict (REJECT / no winner / failed gradient check), 2 usage errors,
3 data errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import model_store, synth
from .dispatcher import dispatch
from .errors import FormatError, MirrorNetError, ShapeError, UsageError, ValidationError
from .network import Architecture, init_weights, reconstruct, signature, validate_architecture
from .preprocess import (
    image_from_unit_vector,
    load_pgm,
    map_to_unit_range,
    rescale_intensities,
    write_pgm,
)
from .recognizer import RecognizerProfile, average_signature, calibrate_thresholds, classify
from .rng import seeded_rng
from .trainer import TrainConfig, finite_difference_check, mse, train

GRADCHECK_TOLERANCE = 1e-4


def _parse_arch(text: str) -> Architecture:
    try:
        sizes = [int(token) for token in text.split(",")]
    except ValueError:
        raise UsageError(f"architecture {text!r} is not a comma-separated integer list") from None
    try:
        return validate_architecture(sizes)
    except ValidationError as exc:
        raise UsageError(f"invalid architecture {text!r}: {exc}") from None


def _load_vector(path) -> tuple[np.ndarray, int, int]:
    path = Path(path)
    try:
        image = load_pgm(path.read_bytes())
    except FormatError as exc:
        raise type(exc)(f"{path}: {exc}") from exc
    return map_to_unit_range(rescale_intensities(image)), image.width, image.height


def _load_image_dir(directory) -> tuple[list[np.ndarray], int, int]:
    """Preprocess every .pgm in a directory (sorted by name); dimensions must agree."""
    directory = Path(directory)
    paths = sorted(directory.glob("*.pgm"))
    if not paths:
        raise UsageError(f"{directory}: no .pgm files found")
    vectors: list[np.ndarray] = []
    width = height = 0
    for path in paths:
        vector, w, h = _load_vector(path)
        if not vectors:
            width, height = w, h
        elif (w, h) != (width, height):
            raise ShapeError(f"{path}: {w}x{h} image in a {width}x{height} dataset")
        vectors.append(vector)
    return vectors, width, height


def _load_model(path):
    return model_store.load_network(Path(path).read_bytes())


def cmd_synth(args) -> int:
    if args.classes < 1 or args.per_class < 1 or args.size < 1:
        raise UsageError("--classes, --per-class and --size must all be positive")
    written = synth.generate_dataset(args.out, args.classes, args.per_class, args.size, args.seed)
    total = sum(len(paths) for paths in written.values())
    print(f"wrote {total} images across {len(written)} classes under {args.out}")
    return 0


def cmd_train(args) -> int:
    arch = _parse_arch(args.arch)
    try:
        config = TrainConfig(
            base_rate=args.rate,
            hidden_multiplier=args.hidden_multiplier,
            max_epochs=args.epochs,
            target_mse=args.target_mse,
            shuffle_seed=args.seed if args.shuffle_seed is None else args.shuffle_seed,
        )
    except ValidationError as exc:
        raise UsageError(str(exc)) from None
    vectors, width, height = _load_image_dir(args.data)
    if arch.input_size != width * height:
        raise ShapeError(
            f"architecture expects {arch.input_size} inputs but images are "
            f"{width}x{height} ({width * height} pixels)"
        )
    net = init_weights(arch, args.seed)
    report = train(net, vectors, config)
    Path(args.out).write_bytes(model_store.save_network(net))
    report_path = Path(args.report) if args.report else Path(str(args.out) + ".report")
    report_path.write_text(report.to_text(), encoding="ascii")
    print(
        f"trained on {len(vectors)} images for {report.epochs_run} epochs "
        f"({report.stop_reason}); final mse {report.epoch_mse[-1]:.17g}"
    )
    print(f"model written to {args.out}, report to {report_path}")
    return 0


def cmd_reconstruct(args) -> int:
    net = _load_model(args.model)
    vector, width, height = _load_vector(args.image)
    mirror = reconstruct(net, vector)
    Path(args.out).write_bytes(write_pgm(image_from_unit_vector(mirror, width, height)))
    print(f"mse {mse(mirror, vector):.17g}")
    return 0


def cmd_calibrate(args) -> int:
    for name in ("tau_sig", "tau_rec"):
        override = getattr(args, name)
        if override is not None and override < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
    net = _load_model(args.model)
    positives, _, _ = _load_image_dir(args.positives)
    negatives, _, _ = _load_image_dir(args.negatives)
    mu_vectors = positives if args.mu_data is None else _load_image_dir(args.mu_data)[0]
    mu = average_signature([signature(net, v) for v in mu_vectors])
    if args.tau_sig is None or args.tau_rec is None:
        tau_sig, tau_rec = calibrate_thresholds(net, mu, positives, negatives)
    else:
        tau_sig = tau_rec = 0.0
    if args.tau_sig is not None:
        tau_sig = args.tau_sig
    if args.tau_rec is not None:
        tau_rec = args.tau_rec
    Path(args.out).write_bytes(model_store.save_profile(RecognizerProfile(mu, tau_sig, tau_rec)))
    print(f"tau_sig {tau_sig:.17g}")
    print(f"tau_rec {tau_rec:.17g}")
    print(f"profile written to {args.out}")
    return 0


def cmd_classify(args) -> int:
    net = _load_model(args.model)
    profile = model_store.load_profile(Path(args.profile).read_bytes())
    vector, _, _ = _load_vector(args.image)
    decision = classify(profile, net, vector)
    print(f"d_sig {decision.d_sig:.17g}")
    print(f"d_rec {decision.d_rec:.17g}")
    print("ACCEPT" if decision.accepted else "REJECT")
    return 0 if decision.accepted else 1


def cmd_dispatch(args) -> int:
    bank = model_store.load_bank(args.bank)
    vector, _, _ = _load_vector(args.image)
    result = dispatch(bank, vector)
    for r in result.records:
        accepted = "yes" if r.accepted else "no"
        print(
            f"{r.label} d_sig={r.d_sig:.17g} d_rec={r.d_rec:.17g} "
            f"accepted={accepted} score={r.score:.17g}"
        )
    print(f"winner {result.winner if result.winner is not None else 'NONE'}")
    return 0 if result.winner is not None else 1


def cmd_gradcheck(args) -> int:
    arch = _parse_arch(args.arch)
    if not args.epsilon > 0:
        raise UsageError("--epsilon must be positive")
    net = init_weights(arch, args.seed)
    probe = seeded_rng(args.seed, 1).uniform(-1.0, 1.0, size=arch.input_size)
    worst = finite_difference_check(net, probe, args.epsilon)
    print(f"max relative error {worst:.17g}")
    return 0 if worst < GRADCHECK_TOLERANCE else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrornet",
        description="Train, inspect and apply mirror networks on PGM images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a seeded synthetic PGM dataset")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--classes", type=int, required=True, help="number of pattern classes")
    p.add_argument("--per-class", type=int, required=True, help="samples per class")
    p.add_argument("--size", type=int, required=True, help="image side length in pixels")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("train", help="train a network on a directory of PGM images")
    p.add_argument("--arch", required=True, help="comma-separated layer sizes, e.g. 25,10,6,3,8,25")
    p.add_argument("--rate", type=float, required=True, help="output-layer learning rate")
    p.add_argument("--hidden-multiplier", type=float, default=1.1,
                   help="hidden-layer rate factor (default 1.1)")
    p.add_argument("--epochs", type=int, required=True, help="epoch budget")
    p.add_argument("--target-mse", type=float, default=0.0, help="stop once epoch MSE <= this")
    p.add_argument("--seed", type=int, default=0, help="weight initialization seed")
    p.add_argument("--shuffle-seed", type=int, default=None,
                   help="presentation-order seed (default: --seed)")
    p.add_argument("--data", required=True, help="directory of training PGMs")
    p.add_argument("--out", required=True, help="output model path")
    p.add_argument("--report", default=None, help="training report path (default: <out>.report)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("reconstruct", help="mirror one image through a trained network")
    p.add_argument("--model", required=True)
    p.add_argument("--image", required=True)
    p.add_argument("--out", required=True, help="output PGM path")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("calibrate", help="build a recognition profile from positives and negatives")
    p.add_argument("--model", required=True)
    p.add_argument("--positives", required=True, help="directory of in-class PGMs")
    p.add_argument("--negatives", required=True, help="directory of out-of-class PGMs")
    p.add_argument("--mu-data", default=None,
                   help="directory whose signatures define the class mean (default: positives)")
    p.add_argument("--tau-sig", type=float, default=None, help="override the signature threshold")
    p.add_argument("--tau-rec", type=float, default=None, help="override the reconstruction threshold")
    p.add_argument("--out", required=True, help="output profile path")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("classify", help="accept or reject one image against a profile")
    p.add_argument("--model", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--image", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dispatch", help="route one image through a bank of networks")
    p.add_argument("--bank", required=True, help="bank manifest path")
    p.add_argument("--image", required=True)
    p.set_defaults(func=cmd_dispatch)

    p = sub.add_parser("gradcheck", help="verify backprop against finite differences")
    p.add_argument("--arch", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=1e-5)
    p.set_defaults(func=cmd_gradcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MirrorNetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    raise SystemExit(main())
