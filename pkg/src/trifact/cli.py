"""Command line front end.

Exit codes: 0 success, 1 mathematical rejection (invalid object, inadmissible
request, lifting obstruction), 2 unreadable or malformed input, 3 a search
bound was exceeded.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import config
from .braces import (
    SkewBrace,
    Substructure,
    brace_automorphisms,
    brace_quotient,
    classify_substructure,
    enumerate_braces,
    is_brace_hom,
    ker_lambda,
    opposite_brace,
    subbraces,
    trivial_brace,
)
from .classify import identify_kind, iso_classes, omega
from .errors import FormatError, SearchBoundExceeded, TrifactError, ValidationError
from .groups import FiniteGroup, all_subgroups, normal_subgroups
from .named import named_group
from .quotients import ideal_quotient_tuple, quotient_trifact
from .serialize import (
    brace_to_dict,
    catalog_to_dict,
    dumps,
    group_from_dict,
    load,
    read_json,
    save,
    trifact_to_dict,
    write_atomic,
)
from .substructure import classify_substructure_trifact
from .trifact import (
    TrifactorisedGroup,
    associated_brace,
    generalised_trifact,
    large_trifact,
    lift_brace_hom,
    recover_eta,
    small_trifact,
)

OK, REJECTED, BAD_INPUT, BOUND = 0, 1, 2, 3


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


def _render_text(obj, indent=0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], dict)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                first = True
                for line in _render_text(item, indent + 1):
                    lines.append(pad + "- " + line.lstrip() if first else line)
                    first = False
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if isinstance(v, list):
        return json.dumps(v, separators=(",", ":"))
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def emit(report: dict, fmt: str, stream=None):
    stream = stream or sys.stdout
    report = _plain(report)
    if fmt == "json":
        stream.write(json.dumps(report, indent=2) + "\n")
    else:
        stream.write("\n".join(_render_text(report)) + "\n")


def _indices(text: str) -> np.ndarray:
    try:
        vals = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise FormatError(f"expected comma separated integers, got {text!r}") from None
    return np.unique(np.array(vals if vals else [0], dtype=np.int64))


def _error_entry(err: TrifactError) -> dict:
    return {"kind": err.kind, "message": str(err), "witness": _plain(err.witness)}


def _violations(err: TrifactError) -> list:
    if isinstance(err, ValidationError):
        return [_error_entry(v) for v in err.violations]
    return [_error_entry(err)]


# loading ---------------------------------------------------------------------

def _load_brace(path) -> SkewBrace:
    return load(path, expect="brace")[1]


def _tuple_for(args) -> tuple:
    """A tuple from a trifact file, or built from a brace file via ``--kernel``
    (default: the large tuple)."""
    kind, obj = load(args.path, expect=("brace", "trifact"))
    if kind == "trifact":
        B = obj.provenance.brace if obj.provenance else associated_brace(obj)
        return obj, B
    kernel = getattr(args, "kernel", None)
    T = large_trifact(obj) if kernel is None else generalised_trifact(obj, _indices(kernel))
    return T, obj


# commands ------------------------------------------------------------------------

def _group_summary(G: FiniteGroup) -> dict:
    return {"order": G.order, "abelian": G.is_abelian(),
            "realisation": "semidirect" if G.is_semidirect else "table"}


def _brace_summary(B: SkewBrace) -> dict:
    kl = ker_lambda(B)
    return {"order": B.order, "trivial": B.is_trivial(), "additive_abelian": B.add.is_abelian(),
            "multiplicative_abelian": B.mul.is_abelian(), "ker_lambda": kl.members,
            "lambda_image_order": B.lam.image_group.order}


def _trifact_summary(T: TrifactorisedGroup) -> dict:
    B = T.provenance.brace if T.provenance else associated_brace(T)
    eta = recover_eta(T, B)
    return {"order": T.order, "K": T.K.order, "H": T.H.order, "E": T.E.order,
            "ker_eta": eta.kernel.members, "tuple_kind": identify_kind(T, B).name,
            "provenance": T.provenance is not None}


def cmd_validate(args) -> tuple:
    try:
        kind, obj = load(args.path)
    except ValidationError as exc:
        return REJECTED, {"file": args.path, "valid": False, "violations": _violations(exc)}
    except TrifactError as exc:
        if isinstance(exc, (FormatError, SearchBoundExceeded)):
            raise
        return REJECTED, {"file": args.path, "valid": False, "violations": _violations(exc)}
    report = {"file": args.path, "kind": kind, "valid": True}
    if kind == "group":
        report.update(_group_summary(obj))
    elif kind == "brace":
        report.update(_brace_summary(obj))
    elif kind == "trifact":
        report.update(_trifact_summary(obj))
    elif kind == "catalog":
        report["braces"] = len(obj[1])
    elif kind == "map":
        report["size"] = len(obj)
    return OK, report


def cmd_info(args) -> tuple:
    kind, obj = load(args.path)
    report = {"file": args.path, "kind": kind}
    if kind == "group":
        report.update(_group_summary(obj))
        report["element_orders"] = {str(int(o)): int(c) for o, c in zip(*np.unique(obj.element_orders, return_counts=True))}
        report["normal_subgroups"] = len(normal_subgroups(obj))
    elif kind == "brace":
        report.update(_brace_summary(obj))
        subs = subbraces(obj)
        labels = [classify_substructure(obj, L).label for L in subs]
        report["subbraces"] = len(subs)
        report["left_ideals"] = sum(lab >= Substructure.LeftIdeal for lab in labels)
        report["ideals"] = sum(lab == Substructure.Ideal for lab in labels)
        report["automorphisms"] = len(brace_automorphisms(obj))
        report["omega"] = len(omega(obj))
    elif kind == "trifact":
        report.update(_trifact_summary(obj))
    elif kind == "catalog":
        report["braces"] = len(obj[1])
        report["trivial"] = sum(B.is_trivial() for B in obj[1])
    else:
        report["size"] = len(obj)
    return OK, report


def cmd_trifact(args) -> tuple:
    B = _load_brace(args.path)
    if args.kernel is not None:
        T = generalised_trifact(B, _indices(args.kernel))
    elif args.kind == "small":
        T = small_trifact(B)
    else:
        T = large_trifact(B)
    if args.output:
        save(args.output, T)
    report = {"brace": args.path, "construction": "kernel" if args.kernel is not None else args.kind}
    report.update(_trifact_summary(T))
    report["output"] = args.output
    return OK, report


def cmd_classify(args) -> tuple:
    B = _load_brace(args.path)
    result = iso_classes(B, certify=args.certify)
    d = result.as_dict()
    rows = []
    for i, c in enumerate(d["classes"]):
        if args.certify:
            status = "certified" if len(d["classes"]) == 1 or all(
                f"{min(i, j)},{max(i, j)}" in d["non_isomorphism_nodes"] for j in range(len(d["classes"])) if j != i
            ) else "unchecked"
        else:
            status = "orbit-sound"
        rows.append({"representative": c["kernel"], "kernel_order": c["kernel_order"],
                     "group_order": c["group_order"], "kind": c["kind"],
                     "orbit_size": len(c["orbit"]), "certificate": status})
    report = {"brace": args.path, "omega": d["omega"], "aut_order": d["aut_order"],
              "classes": len(rows), "table": rows, "certified": d["certified"]}
    if args.certify:
        report["non_isomorphism_nodes"] = d["non_isomorphism_nodes"]
    return OK, report


def cmd_substructures(args) -> tuple:
    T, B = _tuple_for(args)
    rows = []
    for S in all_subgroups(B.add):
        r = classify_substructure_trifact(T, T.K.members[S.members], B)
        d = r.as_dict()
        rows.append({"L": S.members, "brace_label": d["brace_label"], "group_label": d["group_label"],
                     "consistent": d["consistent"], "checks": d["checks"]})
    report = {"source": args.path, "tuple_order": T.order, "subgroups": len(rows),
              "discrepancies": sum(not r["consistent"] for r in rows), "rows": rows}
    if not args.verbose:
        for row in rows:
            row["checks"] = {k: v["holds"] for k, v in row["checks"].items()}
    return OK, report


def cmd_quotient(args) -> tuple:
    T, B = _tuple_for(args)
    report = {"source": args.path}
    if args.ideal is not None:
        I = _indices(args.ideal)
        res = ideal_quotient_tuple(T, I, B)
        Bq = res.brace_quotient
        report.update({"ideal": I, "quotient_brace_order": Bq.order, "quotient_tuple_order": res.tuple.order,
                       "brace_matches": True, "large": len(np.intersect1d(res.tuple.K.members, res.tuple.H.members)) == 1})
        if args.output:
            save(args.output, Bq)
    elif args.normal is not None:
        res = quotient_trifact(T, _indices(args.normal))
        report.update({"normal": res.report.Tn, "quotient_tuple_order": res.tuple.order})
    else:
        raise FormatError("quotient needs --ideal or --normal")
    report["projection"] = res.morphism.map.images
    if args.tuple_output:
        save(args.tuple_output, res.tuple)
    report["output"] = args.output
    report["tuple_output"] = args.tuple_output
    return OK, report


def cmd_enumerate(args) -> tuple:
    if args.group:
        G = group_from_dict(read_json(args.group))
    elif args.named:
        try:
            G = named_group(args.named)
        except KeyError:
            raise FormatError(f"unknown group name {args.named!r}") from None
    else:
        raise FormatError("enumerate needs --group or --named")
    braces = enumerate_braces(G)
    report = {"group_order": G.order, "braces": len(braces),
              "trivial": sum(B.is_trivial() for B in braces)}
    if args.index is not None:
        if not 0 <= args.index < len(braces):
            raise FormatError(f"index {args.index} out of range 0..{len(braces) - 1}")
        if args.output:
            save(args.output, braces[args.index])
        report["index"] = args.index
    elif args.output:
        write_atomic(args.output, dumps(catalog_to_dict(G, braces)))
    report["output"] = args.output
    return OK, report


def cmd_brace(args) -> tuple:
    try:
        G = named_group(args.group)
    except KeyError:
        raise FormatError(f"unknown group name {args.group!r}") from None
    B = trivial_brace(G) if args.which == "trivial" else opposite_brace(G)
    if args.output:
        save(args.output, B)
    report = {"group": args.group, "which": args.which}
    report.update(_brace_summary(B))
    report["output"] = args.output
    return OK, report


def cmd_lift(args) -> tuple:
    T1 = load(args.source, expect="trifact")[1]
    T2 = load(args.target, expect="trifact")[1]
    images = load(args.map, expect="map")[1]
    B1 = T1.provenance.brace if T1.provenance else associated_brace(T1)
    B2 = T2.provenance.brace if T2.provenance else associated_brace(T2)
    if len(images) != B1.order or images.min() < 0 or images.max() >= B2.order:
        raise FormatError("map images do not index the target brace")
    f = is_brace_hom(images, B1, B2)
    m = lift_brace_hom(f, T1, T2)
    if args.output:
        write_atomic(args.output, dumps({"images": m.map.images.tolist()}))
    flags = {k: bool(v) for k, v in sorted(m.flags.items())}
    return OK, {"source": args.source, "target": args.target, "lifted": True, "flags": flags,
                "images": m.map.images, "output": args.output}


COMMANDS = {
    "validate": cmd_validate, "info": cmd_info, "trifact": cmd_trifact, "classify": cmd_classify,
    "substructures": cmd_substructures, "quotient": cmd_quotient, "enumerate": cmd_enumerate,
    "lift": cmd_lift, "brace": cmd_brace,
}


def _bound(text: str) -> tuple:
    name, _, value = text.partition("=")
    fields = {f.name for f in dataclasses.fields(config.Bounds)}
    if name not in fields:
        raise argparse.ArgumentTypeError(f"unknown bound {name!r}; choose from {', '.join(sorted(fields))}")
    try:
        v = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bound value must be an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("bounds must be positive")
    return name, v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="report format")
    common.add_argument("--bound", action="append", type=_bound, default=[], metavar="NAME=VALUE",
                        help="override a search bound (repeatable)")
    p = argparse.ArgumentParser(prog="trifact", description="Skew braces and trifactorised groups.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="certify a group, brace, tuple, map or catalog file")
    s.add_argument("path")
    s = sub.add_parser("info", parents=[common], help="summary of a file")
    s.add_argument("path")
    s = sub.add_parser("trifact", parents=[common], help="build a tuple from a brace")
    s.add_argument("path")
    s.add_argument("--kind", choices=("large", "small"), default="large")
    s.add_argument("--kernel", help="comma separated indices of N (overrides --kind)")
    s.add_argument("-o", "--output")
    s = sub.add_parser("classify", parents=[common], help="isomorphism classes of associated tuples")
    s.add_argument("path")
    s.add_argument("--certify", action="store_true", help="also prove the representatives pairwise non-isomorphic")
    s = sub.add_parser("substructures", parents=[common], help="subbraces, ideals and their group-side tests")
    s.add_argument("path")
    s.add_argument("--kernel", help="use the tuple for this N (brace input only)")
    s.add_argument("-v", "--verbose", action="store_true", help="include witnesses for every condition")
    s = sub.add_parser("quotient", parents=[common], help="quotient by an ideal or a normal subgroup")
    s.add_argument("path")
    s.add_argument("--ideal", help="comma separated brace indices of an ideal")
    s.add_argument("--normal", help="comma separated group indices of a normal subgroup (tuple input)")
    s.add_argument("--kernel", help="use the tuple for this N (brace input only)")
    s.add_argument("-o", "--output", help="quotient brace file")
    s.add_argument("--tuple-output", help="quotient tuple file")
    s = sub.add_parser("enumerate", parents=[common], help="all braces with a given additive group")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--group", help="group file")
    g.add_argument("--named", help="group name such as C4, V4, S3, D8, Q8, C2^3")
    s.add_argument("--index", type=int, help="write only this brace of the catalog")
    s.add_argument("-o", "--output")
    s = sub.add_parser("brace", parents=[common], help="trivial or opposite brace on a named group")
    s.add_argument("group")
    s.add_argument("--which", choices=("trivial", "opposite"), default="trivial")
    s.add_argument("-o", "--output")
    s = sub.add_parser("lift", parents=[common], help="lift a brace homomorphism between two tuples")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("map", help='file {"images": [...]} on brace indices')
    s.add_argument("-o", "--output")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    previous = config.set_bounds(**dict(args.bound)) if args.bound else None
    try:
        try:
            code, report = COMMANDS[args.command](args)
        except SearchBoundExceeded as exc:
            code, report = BOUND, {"error": _error_entry(exc)}
        except FormatError as exc:
            code, report = BAD_INPUT, {"error": _error_entry(exc)}
        except TrifactError as exc:
            code, report = REJECTED, {"error": _error_entry(exc), "violations": _violations(exc)}
        except OSError as exc:
            code, report = BAD_INPUT, {"error": {"kind": "OSError", "message": str(exc), "witness": None}}
        emit(report, args.format, sys.stdout if code == OK or "valid" in report else sys.stderr)
        return code
    finally:
        if previous is not None:
            config.set_bounds(**dataclasses.asdict(previous))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
