"""Arrangement file format and report (de)serialization.

An arrangement file is a JSON document::

    {
      "ambient_dim": 4,
      "subspaces": [
        {"name": "x1", "equations": [[1, 0, 0, 0], [0, 1, 0, 0]]},
        {"name": "x2", "span": [["1", "0", "1/2", "0"]]}
      ]
    }

Each subspace gives exactly one of ``equations`` (rows are linear forms, the
subspace is their joint kernel) or ``span`` (rows span the subspace).  Entries
are integers or rational strings such as ``"-3/4"``; floats are rejected.
The list order is the linear order on the arrangement.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .classify import ClassificationReport, MinimalModelReport, Verdict
from .cohomology import CohomologyRing, PdReport, betti_euler_characteristic, poincare_polynomial
from .dga import members
from .errors import AmbientSubspace, DuplicateSubspace, NonCentralInput, ParseError
from .lattice import Arrangement, IntersectionLattice, element_label, is_geometric, maximal_chains
from .linalg import Subspace

RATIONAL_RE = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?")


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{where}: {value!r} is not an exact rational (use an int or 'p/q' string)")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and RATIONAL_RE.fullmatch(value.strip()):
        return Fraction(value.strip())
    raise ParseError(f"{where}: malformed rational {value!r}")


def _matrix(rows, ambient_dim: int, where: str) -> list[list[Fraction]]:
    if not isinstance(rows, list):
        raise ParseError(f"{where}: expected a list of rows")
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != ambient_dim:
            raise ParseError(f"{where}, row {r}: expected {ambient_dim} entries")
        out.append([_rational(x, f"{where}[{r}][{c}]") for c, x in enumerate(row)])
    return out


def arrangement_from_document(doc, source: str = "<input>") -> Arrangement:
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    if "offset" in doc:
        raise NonCentralInput(f"{source}: affine offsets are not supported")
    l = doc.get("ambient_dim")
    if isinstance(l, bool) or not isinstance(l, int) or l < 1:
        raise ParseError(f"{source}: ambient_dim must be a positive integer")
    entries = doc.get("subspaces", [])
    if not isinstance(entries, list):
        raise ParseError(f"{source}: subspaces must be a list")
    seen: dict[Subspace, str] = {}
    names: set[str] = set()
    atoms = []
    for i, entry in enumerate(entries):
        where = f"{source}: subspaces[{i}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: expected an object")
        if "offset" in entry:
            raise NonCentralInput(f"{where}: affine offsets are not supported")
        name = entry.get("name", f"x{i + 1}")
        if not isinstance(name, str) or not name:
            raise ParseError(f"{where}: name must be a nonempty string")
        where = f"{where} ({name})"
        has_eq, has_span = "equations" in entry, "span" in entry
        if has_eq == has_span:
            raise ParseError(f"{where}: give exactly one of 'equations' or 'span'")
        if has_eq:
            sub = Subspace.from_equations(_matrix(entry["equations"], l, where), l)
        else:
            sub = Subspace.span(_matrix(entry["span"], l, where), l)
        if sub.dim == l:
            raise AmbientSubspace(f"{where}: subspace is all of Q^{l}")
        if sub in seen:
            raise DuplicateSubspace(f"{where}: same subspace as {seen[sub]}")
        if name in names:
            raise ParseError(f"{where}: duplicate name")
        seen[sub] = name
        names.add(name)
        atoms.append((name, sub))
    return Arrangement(l, tuple(atoms))


def parse_arrangement(source: str | Path) -> Arrangement:
    """Parse an arrangement from a path or from the JSON text itself."""
    if isinstance(source, Path) or source.lstrip()[:1] not in ("{", "["):
        path = Path(source)
        text, label = path.read_text(), str(path)
    else:
        text, label = source, "<input>"
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{label}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return arrangement_from_document(doc, label)


def arrangement_to_document(arr: Arrangement) -> dict:
    return {
        "ambient_dim": arr.ambient_dim,
        "subspaces": [
            {"name": name, "span": [[str(x) for x in row] for row in sub.rows()]}
            for name, sub in arr.atoms
        ],
    }


# ----------------------------------------------------------------------------
# reports


@dataclass
class LatticeElementSummary:
    basis: list[list[str]]
    dim: int
    codim: int
    rank: int
    atoms_below: list[str]


@dataclass
class LatticeSummary:
    elements: list[LatticeElementSummary]
    geometric: bool
    witness: tuple[int, int] | None
    maximal_chains: list[list[int]]


@dataclass
class CohomologySummary:
    betti: dict[int, int]
    poincare_polynomial: tuple[int, ...]
    euler_characteristic: int
    pd: PdReport


@dataclass
class ReportDocument:
    lattice: LatticeSummary
    cohomology: CohomologySummary | None
    classification: ClassificationReport | None
    minimal_model: MinimalModelReport | None = None
    source: str = ""


def summarize_lattice(lat: IntersectionLattice) -> LatticeSummary:
    names = lat.arrangement.names
    geometric, witness = is_geometric(lat)
    elements = [
        LatticeElementSummary(
            basis=[[str(x) for x in row] for row in e.rows()],
            dim=e.dim,
            codim=e.codim,
            rank=lat.rank[i],
            atoms_below=[names[a] for a in members(lat.atoms_below[i])],
        )
        for i, e in enumerate(lat.elements)
    ]
    return LatticeSummary(elements, geometric, witness, maximal_chains(lat))


def summarize_cohomology(ring: CohomologyRing, pd: PdReport) -> CohomologySummary:
    betti = dict(ring.betti)
    return CohomologySummary(betti, poincare_polynomial(ring), betti_euler_characteristic(betti), pd)


def _betti_to(b: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(b.items())}


def _betti_from(b: dict[str, int]) -> dict[int, int]:
    return {int(k): v for k, v in b.items()}


def pd_to_dict(pd: PdReport) -> dict:
    return {"is_pd": pd.is_pd, "formal_dim": pd.formal_dim,
            "failures": [[k, reason] for k, reason in pd.failures]}


def pd_from_dict(d: dict) -> PdReport:
    return PdReport(d["is_pd"], d["formal_dim"], [(k, reason) for k, reason in d["failures"]])


def classification_to_dict(r: ClassificationReport) -> dict:
    return {
        "applicable": r.applicable,
        "codim_sum_test": r.codim_sum_test,
        "direct_sum_test": r.direct_sum_test,
        "pd_test": r.pd_test,
        "ring_is_free_exterior": r.ring_is_free_exterior,
        "verdict": r.verdict.value,
        "sphere_dims": _opt(list, r.sphere_dims),
        "witness": r.witness,
        "betti": _betti_to(r.betti),
        "codim_of_intersection": r.codim_of_intersection,
        "sum_of_codims": r.sum_of_codims,
    }


def classification_from_dict(d: dict) -> ClassificationReport:
    return ClassificationReport(
        applicable=d["applicable"],
        codim_sum_test=d["codim_sum_test"],
        direct_sum_test=d["direct_sum_test"],
        pd_test=d["pd_test"],
        ring_is_free_exterior=d["ring_is_free_exterior"],
        verdict=Verdict(d["verdict"]),
        sphere_dims=_opt(list, d["sphere_dims"]),
        witness=d["witness"],
        betti=_betti_from(d["betti"]),
        codim_of_intersection=d["codim_of_intersection"],
        sum_of_codims=d["sum_of_codims"],
    )


def minimal_model_to_dict(m: MinimalModelReport) -> dict:
    return {"generators": [[n, deg] for n, deg in m.generators],
            "atom_names": list(m.atom_names), "differential": dict(m.differential)}


def minimal_model_from_dict(d: dict) -> MinimalModelReport:
    return MinimalModelReport([(n, deg) for n, deg in d["generators"]],
                              list(d["atom_names"]), dict(d["differential"]))


def lattice_to_dict(s: LatticeSummary) -> dict:
    return {
        "elements": [
            {"basis": e.basis, "dim": e.dim, "codim": e.codim, "rank": e.rank,
             "atoms_below": e.atoms_below}
            for e in s.elements
        ],
        "geometric": s.geometric,
        "witness": list(s.witness) if s.witness else None,
        "maximal_chains": s.maximal_chains,
    }


def lattice_from_dict(d: dict) -> LatticeSummary:
    return LatticeSummary(
        elements=[LatticeElementSummary(e["basis"], e["dim"], e["codim"], e["rank"], e["atoms_below"])
                  for e in d["elements"]],
        geometric=d["geometric"],
        witness=tuple(d["witness"]) if d["witness"] else None,
        maximal_chains=d["maximal_chains"],
    )


def cohomology_to_dict(c: CohomologySummary) -> dict:
    return {"betti": _betti_to(c.betti), "poincare_polynomial": list(c.poincare_polynomial),
            "euler_characteristic": c.euler_characteristic, "pd": pd_to_dict(c.pd)}


def cohomology_from_dict(d: dict) -> CohomologySummary:
    return CohomologySummary(_betti_from(d["betti"]), tuple(d["poincare_polynomial"]),
                             d["euler_characteristic"], pd_from_dict(d["pd"]))


def _opt(f, x):
    return None if x is None else f(x)


def report_to_dict(r: ReportDocument) -> dict:
    return {
        "source": r.source,
        "lattice": lattice_to_dict(r.lattice),
        "cohomology": _opt(cohomology_to_dict, r.cohomology),
        "classification": _opt(classification_to_dict, r.classification),
        "minimal_model": _opt(minimal_model_to_dict, r.minimal_model),
    }


def report_from_dict(d: dict) -> ReportDocument:
    return ReportDocument(
        lattice=lattice_from_dict(d["lattice"]),
        cohomology=_opt(cohomology_from_dict, d["cohomology"]),
        classification=_opt(classification_from_dict, d["classification"]),
        minimal_model=_opt(minimal_model_from_dict, d["minimal_model"]),
        source=d.get("source", ""),
    )


def dumps(d: dict) -> str:
    return json.dumps(d, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def serialize_report(r: ReportDocument) -> str:
    return dumps(report_to_dict(r))


def parse_report(text: str) -> ReportDocument:
    return report_from_dict(json.loads(text))


# ----------------------------------------------------------------------------
# text rendering


def render_lattice(lat: IntersectionLattice) -> str:
    s = summarize_lattice(lat)
    lines = [f"{'#':>3}  {'element':<16} {'dim':>3} {'codim':>5} {'rank':>4}  atoms below"]
    for i, e in enumerate(s.elements):
        lines.append(f"{i:>3}  {element_label(lat, i):<16} {e.dim:>3} {e.codim:>5} {e.rank:>4}  "
                     f"{{{', '.join(e.atoms_below)}}}")
    if s.geometric:
        lines.append("geometric: yes")
    else:
        x, y = s.witness
        lines.append(f"geometric: no (submodularity fails for {element_label(lat, x)}, "
                     f"{element_label(lat, y)})")
    lines.append(f"maximal chains: {len(s.maximal_chains)}")
    return "\n".join(lines)


def render_betti(betti: dict[int, int]) -> str:
    degs = sorted(betti)
    head = "degree " + " ".join(f"{k:>3}" for k in degs)
    row = "betti  " + " ".join(f"{betti[k]:>3}" for k in degs)
    return head + "\n" + row


def render_classification(r: ClassificationReport) -> str:
    def flag(v):
        return "skipped" if v is None else ("yes" if v else "no")

    lines = [
        f"verdict:               {r.verdict.value}",
        f"criteria apply:        {flag(r.applicable)}",
        f"codimension additive:  {flag(r.codim_sum_test)}  "
        f"({r.codim_of_intersection} vs {r.sum_of_codims})",
        f"complements direct:    {flag(r.direct_sum_test)}",
        f"poincaré duality:      {flag(r.pd_test)}",
        f"free exterior ring:    {flag(r.ring_is_free_exterior)}",
    ]
    if r.sphere_dims is not None:
        lines.append(f"sphere dimensions:     {r.sphere_dims}")
    lines.append(f"witness: {r.witness}")
    lines.append(render_betti(r.betti))
    return "\n".join(lines)


__all__ = [
    "parse_arrangement",
    "arrangement_from_document",
    "arrangement_to_document",
    "ReportDocument",
    "LatticeSummary",
    "CohomologySummary",
    "serialize_report",
    "parse_report",
]
