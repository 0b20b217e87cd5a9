"""Batch command-line front end.

Commands: split, invariants, verify, library, sum.  Inputs come from the
builtin library (--manifold), a JSON document (--file / stdin), and emit
human-readable text or, with --json, machine-readable documents that
round-trip (re-feeding an echoed input reproduces identical output).

Exit codes: 0 success, 2 document/schema error, 3 validation error,
4 internal invariant breach (the oracle disagreeing with the pipeline).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .abgroup import factorize
from .invariants import (INTEGRAL, Pi3Result, StableCohomotopyTheory,
                         TableTheory, TheoryError, char_class_consistency,
                         classify_spin, generalized_cohomology, mod_k_theory,
                         pi2_structure, pi3, pi3_mod_k, pi4, pi4_mod_k,
                         pi_simple, sq_module)
from .manifolds import Declared, InputData, builtin, connected_sum, library_names
from .oracle import confluence_probe, verify_split
from .splitter import (Coeffs4, Coeffs5, HomologyTable, Move, SplitResult,
                       ValidationError, build_w2, build_w3, build_w4,
                       coeffs4_basis, coeffs5_basis, legal_moves, split,
                       wedge_basis)

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4


class SchemaError(ValueError):
    pass


# --------------------------------------------------------------------------
# Document (de)serialization
# --------------------------------------------------------------------------

def _expect(cond, path, msg):
    if not cond:
        raise SchemaError(f"{path}: {msg}")


def _int_list(value, path):
    _expect(isinstance(value, list), path, "expected a list")
    for i, v in enumerate(value):
        _expect(isinstance(v, int) and not isinstance(v, bool), f"{path}[{i}]",
                "expected an integer")
    return value


def doc_to_data(doc, path="input") -> InputData:
    _expect(isinstance(doc, dict), path, "expected an object")
    unknown = set(doc) - {"homology", "phi4", "phi5", "declared", "provenance"}
    _expect(not unknown, path, f"unknown keys {sorted(unknown)}")
    hom = doc.get("homology")
    _expect(isinstance(hom, dict), f"{path}.homology", "expected an object")
    _expect(isinstance(hom.get("m"), int), f"{path}.homology.m", "expected an integer")
    _expect(isinstance(hom.get("n"), int), f"{path}.homology.n", "expected an integer")
    tors = hom.get("torsion", [])
    _expect(isinstance(tors, list), f"{path}.homology.torsion", "expected a list")
    torsion = []
    for i, e in enumerate(tors):
        tp = f"{path}.homology.torsion[{i}]"
        _expect(isinstance(e, dict) and isinstance(e.get("p"), int)
                and isinstance(e.get("r"), int), tp, "expected {p, r}")
        torsion.append(e["p"] ** e["r"])
    phi4_doc = doc.get("phi4", [])
    _expect(isinstance(phi4_doc, list), f"{path}.phi4", "expected a list")
    phi4 = []
    for i, rec in enumerate(phi4_doc):
        rp = f"{path}.phi4[{i}]"
        _expect(isinstance(rec, dict), rp, "expected an object")
        phi4.append(Coeffs4(tuple(_int_list(rec.get("x", []), rp + ".x")),
                            tuple(_int_list(rec.get("y", []), rp + ".y"))))
    phi5_doc = doc.get("phi5", {})
    _expect(isinstance(phi5_doc, dict), f"{path}.phi5", "expected an object")
    phi5 = Coeffs5(tuple(_int_list(phi5_doc.get("x", []), f"{path}.phi5.x")),
                   tuple(_int_list(phi5_doc.get("y", []), f"{path}.phi5.y")),
                   tuple(_int_list(phi5_doc.get("z", []), f"{path}.phi5.z")))
    ddoc = doc.get("declared", {})
    _expect(isinstance(ddoc, dict), f"{path}.declared", "expected an object")
    unknown = set(ddoc) - {"spin", "w3_nonzero", "p1_mod2"}
    _expect(not unknown, f"{path}.declared", f"unknown keys {sorted(unknown)}")
    for key in ("spin", "w3_nonzero"):
        if key in ddoc:
            _expect(isinstance(ddoc[key], bool), f"{path}.declared.{key}",
                    "expected a boolean")
    p1 = ddoc.get("p1_mod2")
    if p1 is not None:
        p1 = tuple(_int_list(p1, f"{path}.declared.p1_mod2"))
    declared = Declared(ddoc.get("spin"), ddoc.get("w3_nonzero"), p1)
    try:
        h = HomologyTable(hom["m"], hom["n"], tuple(torsion))
    except ValidationError:
        raise
    return InputData(h, tuple(phi4), phi5,
                     str(doc.get("provenance", "document")), declared)


def data_to_doc(data: InputData) -> dict:
    torsion = []
    for t in data.homology.torsion:
        ((p, r),) = factorize(t).items()
        torsion.append({"p": p, "r": r})
    declared = {}
    if data.declared.spin is not None:
        declared["spin"] = data.declared.spin
    if data.declared.w3_nonzero is not None:
        declared["w3_nonzero"] = data.declared.w3_nonzero
    if data.declared.p1_mod2 is not None:
        declared["p1_mod2"] = list(data.declared.p1_mod2)
    doc = {
        "homology": {"m": data.homology.m, "n": data.homology.n, "torsion": torsion},
        "phi4": [{"x": list(r.x), "y": list(r.y)} for r in data.phi4],
        "phi5": {"x": list(data.phi5.x), "y": list(data.phi5.y), "z": list(data.phi5.z)},
        "provenance": data.provenance,
    }
    if declared:
        doc["declared"] = declared
    return doc


def result_to_doc(s: SplitResult) -> dict:
    f = None
    if s.f is not None:
        f = {"family": s.f.family, "x": s.f.x, "y": s.f.y, "z": s.f.z,
             "rho": s.f.rho, "r": s.f.r, "s": s.f.s, "map": s.f.describe()}
    w = s.wedge
    return {"s2": s.s2_count,
            "wedge": {"n3": w.n3, "n4": w.n4, "n5": w.n5,
                      "evens": list(w.evens), "odds": list(w.odds),
                      "b": w.b, "tw": list(w.tw)},
            "f": f,
            "top_sphere": s.top_sphere}


def render_result(s: SplitResult) -> str:
    parts = []

    def times(label, count):
        if count == 1:
            parts.append(label)
        elif count > 1:
            parts.append(f"({label})^{count}")

    times("S^2", s.s2_count)
    w = s.wedge
    times("S^3", w.n3)
    times("S^4", w.n4)
    times("S^5", w.n5)
    for r in w.evens:
        parts.append(f"P^4({2 ** r})")
    for t in w.odds:
        parts.append(f"P^4({t})")
    times("S CP^2", w.b)
    for t in w.tw:
        parts.append(f"S CP^2({2 ** t})")
    if s.f is not None:
        parts.append(f"S Cone({s.f.describe()})")
    else:
        parts.append("S^6")
    return " v ".join(parts)


# --------------------------------------------------------------------------
# Input loading
# --------------------------------------------------------------------------

def load_input(args) -> InputData:
    sources = [x for x in (args.manifold, args.file) if x]
    if args.stdin:
        sources.append("-")
    if len(sources) != 1:
        raise SchemaError("exactly one of --manifold, --file, --stdin is required")
    if args.manifold:
        return builtin(args.manifold)
    text = sys.stdin.read() if args.stdin else open(args.file, encoding="utf-8").read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None
    return doc_to_data(doc)


def _emit(args, doc: dict, text: str):
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def cmd_split(args) -> int:
    data = load_input(args)
    h = data.homology
    w2 = build_w2(h)
    w3 = build_w3(w2, h.n)
    w4, stages = build_w4(h, list(data.phi4))
    result = split(h, list(data.phi4), data.phi5)
    report = verify_split(h, result)
    if not report.ok:
        print(f"internal error: oracle mismatch: {report}", file=sys.stderr)
        return EXIT_INTERNAL
    bases = {
        "w2": wedge_basis(w2),
        "w3": wedge_basis(w3),
        "phi4_bases": [coeffs4_basis(w) for w in stages],
        "w4": wedge_basis(w4),
        "phi5_basis": coeffs5_basis(w4),
    }
    doc = {"input": data_to_doc(data), "result": result_to_doc(result),
           "rendered": render_result(result), "bases": bases}
    lines = [f"input: {data.provenance}",
             f"splitting: {render_result(result)}"]
    if result.f is not None:
        lines.append(f"f: family ({result.f.family}), {result.f.describe()}")
    else:
        lines.append("f: absent (top cell splits off)")
    if args.explain:
        lines.append(f"basis after skeleton: {', '.join(bases['w3']) or '(empty)'}")
        for i, cb in enumerate(bases["phi4_bases"]):
            lines.append(f"5-cell record {i}: x over {cb['x']}, y over {cb['y']}")
        p5 = bases["phi5_basis"]
        lines.append(f"6-cell: x over {p5['x']}, y over {p5['y']}, z over {p5['z']}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def _theory_by_name(name: str, theory_file: str | None):
    if name == "integral":
        return INTEGRAL
    if name.startswith("mod:"):
        return mod_k_theory(int(name.split(":", 1)[1]))
    if name == "mod2":
        return mod_k_theory(2)
    if name == "stable":
        return StableCohomotopyTheory()
    if name == "file":
        if not theory_file:
            raise SchemaError("--cohomology file needs --theory-file")
        with open(theory_file, encoding="utf-8") as fh:
            return TableTheory(json.load(fh))
    raise SchemaError(f"unknown theory {name!r}")


def cmd_invariants(args) -> int:
    data = load_input(args)
    h = data.homology
    result = split(h, list(data.phi4), data.phi5)
    doc: dict = {"input": data_to_doc(data)}
    lines = []
    secondary = args.secondary

    wants_all = args.all or not (args.pi or args.cohomology or args.spin
                                 or args.sq or args.pi2 or args.charclass)
    pis = list(args.pi or ([1, 3, 4, 5] if wants_all else []))
    for n in pis:
        if n in (1, 5):
            g = pi_simple(result, h, n, args.mod if n == 5 else None)
            value = str(g)
        elif n == 4:
            g = pi4_mod_k(result, h, args.mod) if args.mod else pi4(result, h)
            value = str(g)
        elif n == 3:
            if args.mod:
                value = str(pi3_mod_k(result, args.mod, secondary))
            else:
                value = str(pi3(result, secondary))
        elif n == 2:
            value = str(pi2_structure(result, h, secondary))
        else:
            raise SchemaError(f"cohomotopy degree {n} not computed")
        tag = f"pi^{n}" + (f"(Z/{args.mod})" if args.mod and n in (3, 4, 5) else "")
        doc[f"pi{n}"] = value
        lines.append(f"{tag} = {value}")

    if args.cohomology:
        th = _theory_by_name(args.cohomology, args.theory_file)
        gg = generalized_cohomology(result, th, secondary)
        doc["cohomology"] = {str(d): str(gg.at(d)) for d in gg.degrees()}
        lines.append(f"{th.name} cohomology: {gg}")
    if args.spin or wants_all:
        rep = classify_spin(result)
        doc["spin"] = {"spin": rep.spin, "w3_nonzero": rep.w3_nonzero,
                       "detected": [list(t) for t in rep.detected_components]}
        lines.append(f"spin: {rep.spin}; w3 nonzero: {rep.w3_nonzero}")
        for comp, op in rep.detected_components:
            lines.append(f"  component {comp} detected by {op}")
    if args.sq:
        module = sq_module(result)
        doc["sq"] = {"basis": {str(d): list(v) for d, v in module.basis.items()},
                     "sq1": {str(d): [list(r) for r in m] for d, m in module.sq1.items()},
                     "sq2": {str(d): [list(r) for r in m] for d, m in module.sq2.items()},
                     "bocksteins": [list(t) for t in module.bocksteins]}
        lines.append(f"Sq2 on H^3 -> H^5 nonzero: {module.sq2_h3_h5_nonzero()}")
    if args.pi2:
        rep = pi2_structure(result, h, secondary)
        doc["pi2"] = str(rep)
        lines.append(f"pi^2: {rep}")
    if args.charclass or wants_all:
        warnings = char_class_consistency(h, result, data.declared)
        doc["warnings"] = warnings
        lines.extend(f"warning: {w}" for w in warnings)
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    data = load_input(args)
    h = data.homology
    result = split(h, list(data.phi4), data.phi5)
    report = verify_split(h, result)
    probes_ok = True
    failures = []
    if args.probes:
        seed = os.environ.get("PD5_SEED")
        rng = random.Random(int(seed) if seed else 0)
        w4, _ = build_w4(h, list(data.phi4))
        moves = legal_moves(w4)
        for p in range(args.probes):
            script = [rng.choice(moves) for _ in range(rng.randint(0, 10))] if moves else []
            if not confluence_probe(h, list(data.phi4), data.phi5, script):
                probes_ok = False
                failures.append([f"{m.kind}:{m.k}->{m.l}" for m in script])
    ok = report.ok and probes_ok
    doc = {"homology_check": report.ok, "probes_ok": probes_ok,
           "failed_scripts": failures, "detail": str(report)}
    _emit(args, doc, f"homology: {report}\nconfluence probes: "
                     f"{'ok' if probes_ok else 'FAILED ' + str(failures)}")
    return EXIT_OK if ok else EXIT_INTERNAL


def cmd_library(args) -> int:
    doc = {"manifolds": library_names()}
    _emit(args, doc, "\n".join(library_names()))
    return EXIT_OK


def cmd_sum(args) -> int:
    parts = [builtin(name) for name in args.names]
    data = connected_sum(parts)
    doc = data_to_doc(data)
    _emit(args, doc, json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


# --------------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------------

def _add_input_flags(p):
    p.add_argument("--manifold", help="builtin name, e.g. X-1, Minf, X'2")
    p.add_argument("--file", help="JSON input document")
    p.add_argument("--stdin", action="store_true", help="read the document from stdin")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pd5split",
                                 description="suspension splitting of 5-dimensional "
                                             "Poincare duality complexes")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="compute the canonical splitting")
    _add_input_flags(p)
    p.add_argument("--explain", action="store_true",
                   help="echo the basis each coefficient record indexes")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("invariants", help="evaluate invariants of the splitting")
    _add_input_flags(p)
    p.add_argument("--pi", type=int, action="append",
                   help="cohomotopy degree (repeatable)")
    p.add_argument("--mod", type=int, help="coefficient modulus for --pi")
    p.add_argument("--cohomology",
                   help="integral | mod2 | mod:K | stable | file")
    p.add_argument("--theory-file", help="JSON theory table for --cohomology file")
    p.add_argument("--secondary", choices=("trivial", "nontrivial", "unknown"),
                   default="unknown", help="declared value of the secondary operation")
    p.add_argument("--spin", action="store_true")
    p.add_argument("--sq", action="store_true")
    p.add_argument("--pi2", action="store_true")
    p.add_argument("--charclass", action="store_true")
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", help="oracle and confluence checks")
    _add_input_flags(p)
    p.add_argument("--probes", type=int, default=25,
                   help="number of random move scripts (PD5_SEED seeds them)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("library", help="list builtin manifolds")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_library)

    p = sub.add_parser("sum", help="connected sum of builtins")
    p.add_argument("names", nargs="+")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sum)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as e:
        print(f"schema error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except (TheoryError, ValueError) as e:
        if isinstance(e, ValidationError):
            print(f"validation error: {e}", file=sys.stderr)
        else:
            print(f"validation error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
