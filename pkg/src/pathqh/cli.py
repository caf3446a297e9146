"""Command line interface: DSL parsing, dispatch, text/JSON reports.

Exit codes: 0 success, 1 input error, 2 unsupported input (e.g. duality
verification on a non-ideally-ordered algebra), 3 theorem violation or
internal inconsistency.
"""

import argparse
import json
import sys

from .errors import (InputError, PathQHError, TheoremViolationError,
                     UnsupportedInputError)
from . import algebra as algebra_mod
from . import endo as endo_mod
from . import generators as gen_mod
from . import ideals as ideals_mod
from . import modules
from . import qh as qh_mod
from .dsl import emit_dsl, parse_dsl


def loewy_layers(module, namer=None):
    """Radical layers, top first, as sorted label lists."""
    namer = namer or (lambda s: s)
    data = modules.loewy_data(module)
    out = []
    for layer in data.radical_layers:
        row = []
        for label, count in layer.items():
            row.extend([namer(label)] * count)
        out.append(sorted(row))
    return out


def render_loewy(module, namer=None):
    """Text Loewy diagram: one radical layer per line, heads at the top."""
    return "\n".join(" ".join(row) for row in loewy_layers(module, namer))


def _load_spec(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_dsl(text)


def _load(path, max_degree, check=True):
    spec = _load_spec(path)
    return spec, spec.build(max_degree=max_degree, check=check)


def _class_namer(er):
    index = {label: str(i) for i, label in enumerate(er.summand_labels)}
    return lambda label: index.get(label, label)


def _cmd_check(args):
    spec, alg = _load(args.file, args.max_degree)
    report = {
        "algebra": spec.name,
        "dim": alg.dim,
        "monomial": spec.is_monomial,
        "ideally_ordered": None,
        "witness": None,
        "good_left_approximations": None,
        "good_right_approximations": None,
    }
    if spec.is_monomial:
        io = ideals_mod.is_ideally_ordered(alg)
        report["ideally_ordered"] = io.holds
        report["witness"] = list(io.witness) if io.witness else None
        classes = ideals_mod.iso_classes(alg)
        approxes = [ideals_mod.minimal_left_approximation(c, classes)
                    for c in classes]
        report["good_left_approximations"] = ideals_mod.good_left_approximations(
            alg, classes, approxes)
        right = [ideals_mod.minimal_right_approximation(c) for c in classes]
        report["good_right_approximations"] = all(
            r.kernel_dim == 0 for r in right)
    return report


def _cmd_ideals(args):
    spec, alg = _load(args.file, args.max_degree)
    if not spec.is_monomial:
        raise UnsupportedInputError("ideal classes need a monomial algebra")
    classes = ideals_mod.iso_classes(alg)
    report = {
        "algebra": spec.name,
        "dim": alg.dim,
        "classes": [{
            "name": c.name,
            "head": c.head_label,
            "dim": c.dim,
            "layer": c.layer,
            "annihilator": sorted(alg.basis[q].name for q in c.ann),
        } for c in classes],
        "surjections": [[ideals_mod.surjection_exists(a, b) for b in classes]
                        for a in classes],
    }
    return report


def _cmd_endo(args):
    spec, alg = _load(args.file, args.max_degree)
    if not spec.is_monomial:
        raise UnsupportedInputError("endo reports need a monomial algebra")
    er = endo_mod.build_ER(alg)
    quiver, counts = endo_mod.gabriel_quiver(er)
    n = len(er.summand_labels)
    report = {
        "algebra": spec.name,
        "dim": alg.dim,
        "endo_dim": er.dim,
        "labels": list(er.summand_labels),
        "e0": list(er.e0_labels),
        "hom_grid": [[len(er.hom_bases[(i, j)]) for j in range(n)]
                     for i in range(n)],
        "cartan": endo_mod.cartan_matrix(er),
        "gabriel": {f"{a}->{b}": c for (a, b), c in sorted(counts.items())},
    }
    return report


def _cmd_qh(args):
    spec, alg = _load(args.file, args.max_degree)
    if not spec.is_monomial:
        raise UnsupportedInputError("qh reports need a monomial algebra")
    er = endo_mod.build_ER(alg)
    data = qh_mod.qh_data(er)
    namer = _class_namer(er)
    ok, detail = qh_mod.is_quasi_hereditary(er.algebra, data.order)
    flags = qh_mod.strongly_flags(data) if ok else None
    report = {
        "algebra": spec.name,
        "dim": alg.dim,
        "endo_dim": er.dim,
        "order": {namer(l): data.order.layers[l] for l in data.labels},
        "is_qh": ok,
        "detail": detail,
        "flags": {
            "left_strongly": flags.left_strongly if flags else None,
            "right_strongly": flags.right_strongly if flags else None,
            "left_ultra": flags.left_ultra if flags else None,
        },
        "global_dimension": modules.global_dimension(er.algebra, 8),
        "standard": {namer(l): {
            "dim": data.delta_of[l].dim,
            "layers": loewy_layers(data.delta_of[l], namer)}
            for l in data.labels},
        "costandard": {namer(l): {
            "dim": data.nabla_of[l].dim,
            "layers": loewy_layers(data.nabla_of[l], namer)}
            for l in data.labels},
    }
    return report


def _cmd_tilting(args):
    spec, alg = _load(args.file, args.max_degree)
    if not spec.is_monomial:
        raise UnsupportedInputError("tilting needs a monomial algebra")
    er = endo_mod.build_ER(alg)
    data = qh_mod.qh_data(er)
    tilt = qh_mod.characteristic_tilting(er, data)
    namer = _class_namer(er)
    report = {
        "algebra": spec.name,
        "endo_dim": er.dim,
        "tilting": [{
            "class": t.op_class.name,
            "layer": t.op_class.layer,
            "dim": t.module.dim,
            "layers": loewy_layers(t.module, namer),
            "submodule_of_Ae0": t.inclusion.is_injective(),
            "quotient_of_Ae0": t.surjection.is_surjective(),
        } for t in tilt],
    }
    return report


def _cmd_verify_duality(args):
    spec, alg = _load(args.file, args.max_degree)
    if not spec.is_monomial:
        raise UnsupportedInputError(
            "duality verification needs a monomial algebra")
    rep = qh_mod.verify_duality(alg)
    report = {
        "algebra": spec.name,
        "duality": {"tier": rep.tier, "pass": rep.passed},
        "endo_dim": rep.er.dim,
        "ringel_dual_dim": rep.endT.dim,
        "opposite_endo_dim": rep.er_op.dim,
        "layers": [{"class": name, "layer": layer, "tilting_dim": d}
                   for name, layer, d in rep.layer_pairs],
        "detail": rep.detail,
    }
    return report


def _cmd_adr(args):
    spec, alg = _load(args.file, args.max_degree)
    fam = gen_mod.adr_family(alg)
    adr = endo_mod.build_ADR(alg)
    report = {
        "algebra": spec.name,
        "dim": alg.dim,
        "adr_dim": adr.dim,
        "family": [{"vertex": v, "index": i, "dim": m.dim}
                   for m, v, i in fam],
    }
    if spec.is_monomial:
        sourceless = not spec.quiver.sources()
        report["sourceless"] = sourceless
        if sourceless:
            er = endo_mod.build_ER(alg)
            report["matches_endo"] = _grids_match(adr, er)
    return report


def _grids_match(a, b):
    """Dimension grids agree under an isomorphism matching of summands."""
    if len(a.summand_labels) != len(b.summand_labels):
        return False
    match = {}
    used = set()
    for i, m in enumerate(a.modules):
        hit = next((j for j, n in enumerate(b.modules)
                    if j not in used and modules.is_isomorphic(m, n)), None)
        if hit is None:
            return False
        match[i] = hit
        used.add(hit)
    n = len(a.modules)
    for i in range(n):
        for j in range(n):
            if len(a.hom_bases[(i, j)]) != \
                    len(b.hom_bases[(match[i], match[j])]):
                return False
    return True


def _cmd_gen(args):
    kind = args.what[0]
    rest = args.what[1:]
    if kind == "knorrer":
        r, a = int(rest[0]), int(rest[1])
        pres = gen_mod.knorrer(r, a)
        return emit_dsl(f"knorrer_{r}_{a}", pres)
    if kind == "truncated":
        spec = _load_spec(rest[0])
        pres = gen_mod.truncated(spec.quiver, int(rest[1]))
        return emit_dsl(f"{spec.name}_trunc{rest[1]}", pres)
    if kind == "nakayama":
        n, m = int(rest[0]), int(rest[1])
        return emit_dsl(f"nakayama_{n}_{m}", gen_mod.nakayama_cyclic(n, m))
    if kind == "nilpotent":
        spec = _load_spec(rest[0])
        pres = gen_mod.staircase_nilpotent(spec.quiver, int(rest[1]))
        return emit_dsl(f"{spec.name}_nilpotent{rest[1]}", pres)
    raise InputError(f"unknown generator {kind!r}")


def _render_text(report, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for k in report:
            v = report[k]
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
    elif isinstance(report, list):
        for v in report:
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}-")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_flat(v)}")
    else:
        lines.append(f"{pad}{_flat(report)}")
    return "\n".join(lines)


def _is_flat(v):
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


def _flat(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    return str(v)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pathqh",
        description="quasi-hereditary structure and Ringel duality for "
                    "monomial path algebras")
    parser.add_argument("--out", choices=["text", "json"], default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-degree", type=int, default=32)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check", "ideals", "endo", "qh", "tilting",
                 "verify-duality", "adr"):
        p = sub.add_parser(name)
        p.add_argument("file")
    g = sub.add_parser("gen")
    g.add_argument("what", nargs="+",
                   help="knorrer R A | truncated FILE M | nakayama N M | "
                        "nilpotent FILE S")
    return parser


_HANDLERS = {
    "check": _cmd_check,
    "ideals": _cmd_ideals,
    "endo": _cmd_endo,
    "qh": _cmd_qh,
    "tilting": _cmd_tilting,
    "verify-duality": _cmd_verify_duality,
    "adr": _cmd_adr,
}


def run_command(argv):
    """Returns (exit code, report text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code in (0, None) else 1), ""
    try:
        if args.command == "gen":
            return 0, _cmd_gen(args)
        report = _HANDLERS[args.command](args)
        if args.out == "json":
            text = json.dumps(report, indent=2, sort_keys=True,
                              default=_json_default) + "\n"
        else:
            text = _render_text(report) + "\n"
        return 0, text
    except TheoremViolationError as exc:
        return 3, f"theorem violation: {exc}\n"
    except UnsupportedInputError as exc:
        return 2, f"unsupported input: {exc}\n"
    except InputError as exc:
        return 1, f"input error: {exc}\n"
    except OSError as exc:
        return 1, f"input error: {exc}\n"
    except PathQHError as exc:
        return 3, f"internal inconsistency: {exc}\n"


def _json_default(v):
    from fractions import Fraction
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    raise TypeError(f"not JSON serializable: {v!r}")


def main(argv=None):
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    if text:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
