"""Command-line interface: ``subarr {lattice,model,cohomology,classify,check} FILE``."""

from __future__ import annotations

import argparse
import os
import sys

from . import io
from .checks import run_all
from .classify import Verdict, classify, minimal_model
from .cohomology import (
    cohomology_ring,
    format_polynomial,
    is_poincare_duality_algebra,
    poincare_polynomial,
)
from .dga import DEFAULT_ATOM_CAP, GradedDga, members
from .errors import ArrangementError, PreconditionFailed
from .lattice import build_lattice

EXIT_CODES = {
    Verdict.ELLIPTIC: 0,
    Verdict.HYPERBOLIC: 10,
    Verdict.NOT_APPLICABLE: 11,
}
EXIT_ERROR = 1


def atom_cap_from_env() -> int:
    raw = os.environ.get("ATOM_CAP")
    if raw is None:
        return DEFAULT_ATOM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise SystemExit(f"ATOM_CAP must be an integer, got {raw!r}")
    return cap


def _out(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_lattice(args) -> int:
    arr = io.parse_arrangement(args.file)
    lat = build_lattice(arr)
    if args.json:
        _out(io.dumps(io.lattice_to_dict(io.summarize_lattice(lat))))
    else:
        _out(io.render_lattice(lat))
    return 0


def cmd_model(args) -> int:
    arr = io.parse_arrangement(args.file)
    dga = GradedDga(arr, atom_cap=args.atom_cap)
    names = arr.names

    def label(s):
        return "{" + ", ".join(names[i] for i in members(s)) + "}"

    lines = []
    for k, basis in dga.basis_by_degree.items():
        if args.max_degree is not None and k > args.max_degree:
            break
        lines.append(f"D^{k} (dim {len(basis)}): " + " ".join(label(s) for s in basis))
    for k in dga.degrees:
        if args.max_degree is not None and k > args.max_degree:
            break
        if not dga.basis(k + 1):
            continue
        mat = dga.differential_matrix(k)
        lines.append(f"d: D^{k} -> D^{k + 1}  ({mat.rows}x{mat.cols})")
        for r in range(mat.rows):
            lines.append("  [" + " ".join(f"{x!s:>3}" for x in mat.row(r)) + " ]")
    _out("\n".join(lines))
    return 0


def cmd_cohomology(args) -> int:
    arr = io.parse_arrangement(args.file)
    ring = cohomology_ring(GradedDga(arr, atom_cap=args.atom_cap))
    pd = is_poincare_duality_algebra(ring)
    if args.json:
        _out(io.dumps(io.cohomology_to_dict(io.summarize_cohomology(ring, pd))))
        return 0
    fails = ", ".join(f"{reason}@{k}" for k, reason in pd.failures)
    _out("\n".join([
        io.render_betti(ring.betti),
        f"poincaré polynomial: {format_polynomial(poincare_polynomial(ring))}",
        f"formal dimension:    {pd.formal_dim}",
        f"poincaré duality:    {'yes' if pd.is_pd else 'no (' + fails + ')'}",
    ]))
    return 0


def cmd_classify(args) -> int:
    arr = io.parse_arrangement(args.file)
    report = classify(arr, atom_cap=args.atom_cap)
    if args.json:
        lat = build_lattice(arr)
        ring = cohomology_ring(GradedDga(arr, lat, atom_cap=args.atom_cap))
        try:
            model = minimal_model(arr, atom_cap=args.atom_cap)
        except PreconditionFailed:
            model = None
        doc = io.ReportDocument(
            lattice=io.summarize_lattice(lat),
            cohomology=io.summarize_cohomology(ring, is_poincare_duality_algebra(ring)),
            classification=report,
            minimal_model=model,
            source=os.path.basename(str(args.file)),
        )
        _out(io.serialize_report(doc))
    else:
        _out(io.render_classification(report))
    return EXIT_CODES[report.verdict]


def cmd_check(args) -> int:
    arr = io.parse_arrangement(args.file)
    results = run_all(GradedDga(arr, atom_cap=args.atom_cap))
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        _out(f"{status}  {r.name}" + (f"  ({r.detail})" if r.detail else ""))
    return 0 if all(r.ok for r in results) else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subarr",
        description="Intersection lattice, atomic model, cohomology and "
                    "elliptic/hyperbolic classification of central subspace arrangements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="arrangement JSON file")
        p.set_defaults(func=func)
        return p

    add("lattice", cmd_lattice, "print the intersection lattice").add_argument(
        "--json", action="store_true", help="machine-readable output")
    add("model", cmd_model, "dump the graded basis and differential matrices").add_argument(
        "--max-degree", type=int, default=None, help="omit degrees above this")
    add("cohomology", cmd_cohomology, "Betti numbers, Poincaré polynomial, duality").add_argument(
        "--json", action="store_true", help="machine-readable output")
    add("classify", cmd_classify,
        "elliptic/hyperbolic verdict (exit 0 elliptic, 10 hyperbolic, 11 not applicable)"
        ).add_argument("--json", action="store_true", help="machine-readable output")
    add("check", cmd_check, "run the invariant suite; nonzero exit on any violation")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.atom_cap = atom_cap_from_env()
    try:
        return args.func(args)
    except (ArrangementError, OSError) as exc:
        print(f"subarr {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
