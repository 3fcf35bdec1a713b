"""Command-line front end.

Every subcommand reads one instance (inline, from a file, or from a
generator), runs one analysis and writes CSV or JSON to stdout or
``--output``. Exit codes: 0 success, 2 invalid input, 3 resource cap,
4 structural assumption violated (injectivity, boundary gap, ...).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys

from . import __version__
from .config import ENV_VAR, Caps
from .errors import SsFractalError, ValidationError
from .hausdorff import attractor_digits, components, image_set, image_set_explicit, similarity_dimension
from .instance import (
    family_arithmetic,
    family_random_density,
    family_superincreasing,
    gen_arithmetic,
    gen_random_density,
    gen_superincreasing,
    load_instance,
    new_instance,
)
from .multiplicity import collision_classes, multiplicity_dp
from .partition import lower_bound, weak_partition_enumerate, weighted_zero_count_dp
from .spectrum import (
    METHODS,
    family_dimension,
    parse_q,
    singularity_csv,
    singularity_strengths,
    spectrum,
)

log = logging.getLogger("ssfractal")


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated integers, got {text!r}") from None


def parse_grid(text: str) -> list[float]:
    """Comma list of q values and ``lo:hi:step`` ranges (inclusive), sorted and deduplicated."""
    values: list[float] = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        if ":" in item and not item.lower().lstrip("+-").startswith("inf"):
            parts = item.split(":")
            if len(parts) != 3:
                raise ValidationError(f"range must be lo:hi:step, got {item!r}")
            lo, hi, step = (parse_q(p) for p in parts)
            if not all(map(math.isfinite, (lo, hi, step))) or step <= 0 or hi < lo:
                raise ValidationError(f"bad range {item!r}")
            count = int(math.floor((hi - lo) / step + 1e-9)) + 1
            values.extend(round(lo + k * step, 12) for k in range(count))
        else:
            values.append(parse_q(item))
    if not values:
        raise ValidationError("empty q grid")
    return sorted(set(values))


def parse_size_range(text: str) -> list[int]:
    """``lo:hi`` or ``lo:hi:step`` (inclusive), or a comma list."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            lo, hi, step = parts
            if step < 1 or hi < lo:
                raise ValueError
            return list(range(lo, hi + 1, step))
        return parse_int_list(text)
    except ValueError:
        raise ValidationError(f"bad size range {text!r}") from None


def _pair(text: str, kind) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError(f"expected two comma-separated values, got {text!r}")
    try:
        return int(parts[0]), kind(parts[1])
    except ValueError:
        raise ValidationError(f"bad value {text!r}") from None


def caps_from_args(args) -> Caps:
    caps = Caps.from_env()
    return caps.replace(
        brute=args.brute_cap, ternary=args.ternary_cap, modulus=args.modulus_cap, array=args.array_cap
    )


def instance_from_args(args, caps: Caps):
    sources = [
        args.weights is not None,
        args.file is not None,
        args.arith is not None,
        args.random is not None,
        args.superincreasing is not None,
    ]
    if sum(sources) != 1:
        raise ValidationError("give exactly one of --weights/--modulus, --file, --arith, --random, --superincreasing")
    if args.weights is not None:
        if args.modulus is None:
            raise ValidationError("--weights needs --modulus")
        return new_instance(parse_int_list(args.weights), args.modulus)
    if args.file is not None:
        return load_instance(args.file)
    if args.arith is not None:
        return gen_arithmetic(*_pair(args.arith, int))
    if args.random is not None:
        s, rho = _pair(args.random, float)
        return gen_random_density(s, rho, args.seed, caps)
    return gen_superincreasing(args.superincreasing, args.seed)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _bits(x) -> str:
    return "".join(map(str, x))


def cmd_spectrum(args, caps: Caps) -> str:
    inst = instance_from_args(args, caps)
    spec = spectrum(multiplicity_dp(inst, caps), parse_grid(args.q), inst)
    return spec.to_csv() if args.format == "csv" else json.dumps(spec.to_dict()) + "\n"


def cmd_lowerbound(args, caps: Caps) -> str:
    report = lower_bound(instance_from_args(args, caps), caps)
    if args.format == "csv":
        return _csv([["field", "value"], *report.to_dict().items()])
    return report.to_json() + "\n"


def cmd_multiplicity(args, caps: Caps) -> str:
    mv = multiplicity_dp(instance_from_args(args, caps), caps)
    return mv.to_csv() if args.format == "csv" else mv.to_json() + "\n"


def cmd_collisions(args, caps: Caps) -> str:
    classes = collision_classes(instance_from_args(args, caps), args.min_size, caps)
    if args.format == "csv":
        rows = [["residue", "size", "members"]]
        rows += [[c.residue, c.size, ";".join(_bits(x) for x in c.members)] for c in classes]
        return _csv(rows)
    doc = [{"residue": c.residue, "size": c.size, "members": [_bits(x) for x in c.members]} for c in classes]
    return json.dumps({"classes": doc}) + "\n"


def cmd_weakpartition(args, caps: Caps) -> str:
    inst = instance_from_args(args, caps)
    solutions = weak_partition_enumerate(inst, caps)
    if args.format == "csv":
        return "".join(f"{sol}\n" for sol in solutions)
    doc = {
        "solutions": [str(sol) for sol in solutions],
        "total_weighted": weighted_zero_count_dp(inst, caps),
    }
    return json.dumps(doc) + "\n"


def cmd_hausdorff(args, caps: Caps) -> str:
    if args.image is not None:
        if args.modulus is None:
            raise ValidationError("--image needs --modulus")
        img = image_set_explicit(parse_int_list(args.image), args.modulus, args.mode)
    else:
        img = image_set(instance_from_args(args, caps), args.mode, caps)
    if args.digits is not None:
        return "".join(f"{word}\n" for word in attractor_digits(img, args.digits, caps))
    dec = components(img)
    report = similarity_dimension(dec, img.modulus)
    doc = report.to_dict()
    doc.update(c_min=img.c_min, n=dec.n, n_prime=dec.n_prime, boundary_warning=img.boundary_warning)
    if args.format == "csv":
        return _csv([["field", "value"], *((k, v) for k, v in doc.items() if k != "components")])
    return json.dumps(doc) + "\n"


def cmd_family(args, caps: Caps) -> str:
    sizes = parse_size_range(args.s)
    if args.kind == "arithmetic":
        fam = family_arithmetic(args.a, sizes)
    elif args.kind == "random-density":
        fam = family_random_density(args.rho, args.seed, sizes, caps)
    else:
        fam = family_superincreasing(args.seed, sizes)
    est = family_dimension(fam, parse_q(args.q), args.method, caps)
    return est.to_csv() if args.format == "csv" else json.dumps(est.to_dict()) + "\n"


def cmd_singularity(args, caps: Caps) -> str:
    entries = singularity_strengths(multiplicity_dp(instance_from_args(args, caps), caps))
    if args.format == "csv":
        return singularity_csv(entries)
    return json.dumps({"entries": [{"l": e.l, "alpha": e.alpha, "N_l": e.count} for e in entries]}) + "\n"


def _add_common(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--format", choices=("csv", "json"), default=default_format)
    p.add_argument("--output", "-o", help="write here instead of stdout")
    p.add_argument("--brute-cap", type=int, help="largest s for 2^s enumeration")
    p.add_argument("--ternary-cap", type=int, help="largest s for 3^s enumeration")
    p.add_argument("--modulus-cap", type=int, help="largest modulus a generator may produce")
    p.add_argument("--array-cap", type=int, help="largest residue-indexed array")
    p.add_argument("--seed", type=int, default=0)


def _add_instance(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("instance source (exactly one)")
    g.add_argument("--weights", help="comma-separated weights, used with --modulus")
    g.add_argument("--modulus", type=int)
    g.add_argument("--file", help="instance JSON file")
    g.add_argument("--arith", metavar="S,A", help="weights a,2a,...,sa modulo (s+1)a")
    g.add_argument("--random", metavar="S,RHO", help="random weights at density about RHO (uses --seed)")
    g.add_argument("--superincreasing", type=int, metavar="S", help="superincreasing weights (uses --seed)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssfractal",
        description="Multifractal analysis of modular subset-sum functions.",
        epilog=(
            f"Caps may also be set with {ENV_VAR}, e.g. "
            f"{ENV_VAR}=brute=24,ternary=16,modulus=9007199254740991. "
            "Exit codes: 0 ok, 2 invalid input, 3 resource cap, 4 assumption violated."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="combinatorial q-fractal dimensions D_q")
    _add_instance(p)
    p.add_argument("--q", default="-inf,-2:2:0.5,+inf", help="grid: list and lo:hi:step ranges, -inf/+inf allowed")
    _add_common(p, "csv")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("lowerbound", help="weak-partition lower bound on the image size")
    _add_instance(p)
    _add_common(p, "json")
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("multiplicity", help="exact preimage count per residue")
    _add_instance(p)
    _add_common(p, "csv")
    p.set_defaults(func=cmd_multiplicity)

    p = sub.add_parser("collisions", help="preimage classes of size >= --min-size")
    _add_instance(p)
    p.add_argument("--min-size", type=int, default=2)
    _add_common(p, "csv")
    p.set_defaults(func=cmd_collisions)

    p = sub.add_parser("weakpartition", help="all canonical weak partition solutions")
    _add_instance(p)
    _add_common(p, "csv")
    p.set_defaults(func=cmd_weakpartition)

    p = sub.add_parser("hausdorff", help="similarity dimension of the attractor of an injective image")
    _add_instance(p)
    p.add_argument("--image", help="explicit residues (with --modulus) instead of an instance")
    p.add_argument("--mode", choices=("strict", "lenient"), default="strict")
    p.add_argument("--digits", type=int, metavar="DEPTH", help="print attractor digit strings instead")
    _add_common(p, "json")
    p.set_defaults(func=cmd_hausdorff)

    p = sub.add_parser("family", help="D_q along a family of instances")
    p.add_argument("--kind", choices=("arithmetic", "random-density", "superincreasing"), required=True)
    p.add_argument("--s", required=True, help="sizes: lo:hi[:step] or comma list")
    p.add_argument("--q", required=True)
    p.add_argument("--a", type=int, default=1, help="common difference (arithmetic)")
    p.add_argument("--rho", type=float, default=1.0, help="target density (random-density)")
    p.add_argument("--method", choices=METHODS, default="last-sample")
    _add_common(p, "csv")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("singularity", help="strengths of singularity alpha_l")
    _add_instance(p)
    _add_common(p, "csv")
    p.set_defaults(func=cmd_singularity)
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    # let "--q -inf,0" through: argparse would read "-inf,0" as an option
    out: list[str] = []
    it = iter(argv)
    for arg in it:
        if arg in ("--q", "--image"):
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        caps = caps_from_args(args)
        text = args.func(args, caps)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except SsFractalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
