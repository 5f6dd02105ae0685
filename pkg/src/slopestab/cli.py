"""Batch command-line front end.

Every subcommand reads declarative JSON inputs, runs one operation, and emits
one deterministic JSON document (sorted keys, no floats, version embedded).
Exit codes: 0 success, 1 domain error, 2 guard or parse error.  Diagnostics
go to stderr as single-line JSON.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path as FsPath
from typing import Any

from . import __version__
from .errors import DomainError, FormatError, GuardError
from .fields import PrimeField, field_from_tag
from .ktheory import K0Class, Ordering, compare_slopes, integerize_character, slope_value
from .moduli import moduli_set
from .reps import reduce_mod, relation_failures
from .stability import classify_stability, hn_filtration, max_destabilizer
from .catalog import find_stability_certificate, sl2_block, sl2_slope, sl3_data
from . import serialize


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def _emit(document: dict, args: argparse.Namespace) -> None:
    document = {"version": __version__, **document}
    text = json.dumps(document, sort_keys=True, indent=2) + "\n"
    if args.out:
        FsPath(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_gamma(text: str) -> K0Class:
    try:
        return K0Class.of(int(part) for part in text.split(","))
    except ValueError as exc:
        raise FormatError(f"bad class literal {text!r}; expected e.g. '1,1'") from exc


def _load_rep(args: argparse.Namespace, algebra):
    rep = serialize.representation_from_json(_read_json(args.rep), algebra)
    warning = None
    if args.field:
        field = field_from_tag(args.field)
        if isinstance(field, PrimeField) and not isinstance(rep.field, PrimeField):
            rep = reduce_mod(rep, field.p)
            warning = (
                f"rational input reduced modulo {field.p}; the verdict certifies "
                "the reduced representation"
            )
        elif field != rep.field:
            raise DomainError(
                f"representation is over {rep.field.tag}; cannot reinterpret as {field.tag}"
            )
    return rep, warning


def _cmd_validate(args: argparse.Namespace) -> None:
    algebra = serialize.algebra_from_json(_read_json(args.algebra))
    document: dict[str, Any] = {
        "command": "validate",
        "algebra_id": serialize.digest(serialize.algebra_to_json(algebra)),
        "dimension": algebra.dimension,
        "basis": [p.display() for p in algebra.basis],
    }
    if args.rep:
        rep = serialize.representation_from_json(_read_json(args.rep), algebra)
        failures = relation_failures(algebra, rep)
        if failures:
            raise DomainError(
                f"representation violates relations {failures} of the algebra"
            )
        document["representation_valid"] = True
        document["dims"] = list(rep.dims)
    _emit(document, args)


def _cmd_slope(args: argparse.Namespace) -> None:
    slope = serialize.slope_from_json(_read_json(args.slope))
    classes = serialize.classes_from_json(_read_json(args.classes))
    values = []
    for cls in classes:
        sv = slope_value(cls, slope)
        values.append(
            {
                "class": serialize.k0_to_json(cls),
                **serialize.slope_value_to_json(sv.numerator, sv.denominator),
            }
        )
    comparisons = []
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            order = compare_slopes(classes[i], classes[j], slope)
            comparisons.append({"left": i, "right": j, "order": order.name.lower()})
    _emit(
        {"command": "slope", "values": values, "comparisons": comparisons},
        args,
    )


def _cmd_character(args: argparse.Namespace) -> None:
    slope = serialize.slope_from_json(_read_json(args.slope))
    gamma = _parse_gamma(args.gamma)
    character = integerize_character(slope, gamma)
    _emit(
        {"command": "character", "character": serialize.character_to_json(character)},
        args,
    )


def _cmd_stability(args: argparse.Namespace) -> None:
    algebra = serialize.algebra_from_json(_read_json(args.algebra))
    slope = serialize.slope_from_json(_read_json(args.slope))
    rep, warning = _load_rep(args, algebra)
    verdict = classify_stability(rep, slope, args.guard)
    document: dict[str, Any] = {
        "command": "stability",
        "verdict": verdict.value,
        "dims": list(rep.dims),
        "field": rep.field.tag,
    }
    if warning:
        document["warning"] = warning
    if not verdict.is_semistable:
        witness = max_destabilizer(rep, slope, args.guard)
        document["destabilizer"] = {
            "class": serialize.k0_to_json(witness.k0_class()),
            "subspaces": serialize.family_to_json(witness, rep.field),
        }
    _emit(document, args)


def _cmd_hn(args: argparse.Namespace) -> None:
    algebra = serialize.algebra_from_json(_read_json(args.algebra))
    slope = serialize.slope_from_json(_read_json(args.slope))
    rep, warning = _load_rep(args, algebra)
    filtration = hn_filtration(rep, slope, args.guard)
    document: dict[str, Any] = {
        "command": "hn",
        "field": rep.field.tag,
        **serialize.hn_to_json(filtration, rep.field),
    }
    if warning:
        document["warning"] = warning
    _emit(document, args)


def _cmd_moduli(args: argparse.Namespace) -> None:
    algebra = serialize.algebra_from_json(_read_json(args.algebra))
    slope = serialize.slope_from_json(_read_json(args.slope))
    field = field_from_tag(args.field)
    if not isinstance(field, PrimeField):
        raise DomainError("moduli enumeration needs --field fp:<p>")
    gamma = _parse_gamma(args.gamma)
    ms = moduli_set(algebra, gamma, field, slope, args.guard)
    _emit({"command": "moduli", **serialize.moduli_to_json(ms)}, args)


def _cmd_certify(args: argparse.Namespace) -> None:
    weights = serialize.weight_data_from_json(_read_json(args.weights))
    target = _parse_gamma(args.target)
    subobjects = serialize.classes_from_json(_read_json(args.subobjects))
    certificate = find_stability_certificate(target, subobjects, weights)
    document: dict[str, Any] = {"command": "certify", "target": serialize.k0_to_json(target)}
    if certificate is None:
        document["certificate"] = None
    else:
        document["certificate"] = [serialize.rational_to_str(x) for x in certificate]
    _emit(document, args)


def _slug(name: str) -> str:
    # Keep distinct names distinct: "M(0)" vs "M*(0)", "L(0)" vs "L(-2)".
    expanded = name.replace("*", "star").replace("-", "m")
    return re.sub(r"[^A-Za-z0-9]+", "_", expanded).strip("_")


def _cmd_catalog(args: argparse.Namespace) -> None:
    if not args.export:
        _emit(
            {
                "command": "catalog",
                "entries": [
                    {
                        "name": "sl2",
                        "summary": "five-dimensional two-vertex block with its "
                        "five indecomposables",
                    },
                    {
                        "name": "sl3",
                        "summary": "six-weight rank-two block at the class level "
                        "with Verma data",
                    },
                ],
            },
            args,
        )
        return
    if not args.dir:
        raise FormatError("--export needs --dir")
    out_dir = FsPath(args.dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[str] = []

    def write(name: str, payload: dict) -> None:
        text = json.dumps(
            {"version": __version__, **payload}, sort_keys=True, indent=2
        ) + "\n"
        (out_dir / name).write_text(text, encoding="utf-8")
        written.append(name)

    if args.export == "sl2":
        entry = sl2_block()
        write("algebra.json", serialize.algebra_to_json(entry.algebra))
        for name, rep in sorted(entry.representations.items()):
            write(f"rep_{_slug(name)}.json", serialize.representation_to_json(rep))
        write("weights.json", serialize.weight_data_to_json(entry.weight_data))
        write("slope_x2_1.json", serialize.slope_to_json(sl2_slope((0, 1))))
    elif args.export == "sl3":
        system = sl3_data()
        write("weights.json", serialize.weight_data_to_json(system.weights))
        write(
            "verma_classes.json",
            {
                "classes": [serialize.k0_to_json(c) for c in system.verma_classes],
                "default_subobject_sets": [
                    [serialize.k0_to_json(c) for c in subset]
                    for subset in system.default_subobject_sets
                ],
            },
        )
    else:
        raise FormatError(f"unknown catalog entry {args.export!r}")
    _emit({"command": "catalog", "exported": args.export, "files": written}, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slopestab",
        description="Exact slope-stability computations for quiver representations.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, guard: bool = False, field: bool = False):
        p.add_argument("--out", help="write the JSON document here instead of stdout")
        p.add_argument(
            "--format", choices=["json"], default="json", help="output format"
        )
        if guard:
            p.add_argument(
                "--guard",
                type=int,
                default=10**7,
                help="enumeration budget (default 10^7)",
            )
        if field:
            p.add_argument(
                "--field",
                help="field tag q or fp:<p>; rational reps are reduced mod p",
            )

    p = sub.add_parser("validate", help="check an algebra file and optionally a representation")
    p.add_argument("--algebra", required=True)
    p.add_argument("--rep")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("slope", help="slope values and pairwise comparisons for classes")
    p.add_argument("--slope", required=True)
    p.add_argument("--classes", required=True)
    common(p)
    p.set_defaults(func=_cmd_slope)

    p = sub.add_parser("character", help="integerize the slope character bound to a class")
    p.add_argument("--slope", required=True)
    p.add_argument("--gamma", required=True, help="comma-separated multiplicities")
    common(p)
    p.set_defaults(func=_cmd_character)

    p = sub.add_parser("stability", help="stability verdict for a representation")
    p.add_argument("--algebra", required=True)
    p.add_argument("--rep", required=True)
    p.add_argument("--slope", required=True)
    common(p, guard=True, field=True)
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("hn", help="Harder-Narasimhan filtration report")
    p.add_argument("--algebra", required=True)
    p.add_argument("--rep", required=True)
    p.add_argument("--slope", required=True)
    common(p, guard=True, field=True)
    p.set_defaults(func=_cmd_hn)

    p = sub.add_parser("moduli", help="moduli-set inventory for a class over fp")
    p.add_argument("--algebra", required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--slope", required=True)
    common(p, guard=True)
    p.add_argument("--field", required=True, help="fp:<p>")
    p.set_defaults(func=_cmd_moduli)

    p = sub.add_parser("certify", help="search a stability certificate for a class")
    p.add_argument("--weights", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--subobjects", required=True)
    common(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("catalog", help="list or export the built-in instances")
    p.add_argument("--export", help="entry name to export (sl2 or sl3)")
    p.add_argument("--dir", help="directory for exported files")
    common(p)
    p.set_defaults(func=_cmd_catalog)

    return parser


def _diagnostic(kind: str, message: str) -> None:
    sys.stderr.write(
        json.dumps(
            {"version": __version__, "error": {"kind": kind, "message": message}},
            sort_keys=True,
        )
        + "\n"
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except DomainError as exc:
        _diagnostic("domain", str(exc))
        return 1
    except GuardError as exc:
        _diagnostic("guard", str(exc))
        return 2
    except FormatError as exc:
        _diagnostic("format", str(exc))
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
