"""JSON file formats for configurations, polynomials, and chain models.

Rational values are written as strings ("3/4", "-2"), prime-field residues as
plain ints.  All writers sort keys so that identical objects produce
byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .errors import InputError
from .exactalg import Field, RationalField, parse_field
from .lsys import HomogeneousPoly
from .projgeom import Config, Conic, ProjLine, ProjPoint
from .twisted import ChainComplex, ChainMap, CwComplex, LocalSystem, assemble


def value_to_json(field: Field, v):
    if isinstance(field, RationalField):
        return str(v)
    return int(v)


def value_list(field: Field, vals) -> list:
    return [value_to_json(field, v) for v in vals]


def config_to_json(cfg: Config) -> dict:
    f = cfg.field
    return {
        "type_id": cfg.type_id,
        "field": f.name,
        "points": [value_list(f, p.coords) for p in cfg.points],
        "lines": [value_list(f, ln.coeffs) for ln in cfg.lines],
        "conics": [value_list(f, c.coeffs) for c in cfg.conics],
        "whole_plane": cfg.whole_plane,
    }


def config_from_json(data: dict) -> Config:
    try:
        field = parse_field(data["field"])
        points = tuple(ProjPoint(field, tuple(field.coerce(v) for v in coords))
                       for coords in data.get("points", []))
        lines = tuple(ProjLine(field, tuple(field.coerce(v) for v in coeffs))
                      for coeffs in data.get("lines", []))
        conics = tuple(Conic(field, tuple(field.coerce(v) for v in coeffs))
                       for coeffs in data.get("conics", []))
        return Config(field, points=points, lines=lines, conics=conics,
                      type_id=data.get("type_id", "untyped"),
                      whole_plane=bool(data.get("whole_plane", False)))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed configuration file: {exc}") from exc


def poly_to_json(poly: HomogeneousPoly) -> dict:
    return {
        "field": poly.field.name,
        "degree": poly.degree,
        "terms": [
            {"exps": list(exps), "coeff": value_to_json(poly.field, c)}
            for exps, c in sorted(poly.terms.items(), reverse=True)
        ],
    }


def poly_from_json(data: dict) -> HomogeneousPoly:
    try:
        field = parse_field(data["field"])
        terms = {tuple(t["exps"]): field.coerce(t["coeff"]) for t in data["terms"]}
        return HomogeneousPoly(field, int(data["degree"]), terms)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed polynomial file: {exc}") from exc


def load_poly(path: str) -> HomogeneousPoly:
    with open(path, "r", encoding="utf-8") as fh:
        return poly_from_json(json.load(fh))


def save_poly(poly: HomogeneousPoly, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(poly_to_json(poly), fh, sort_keys=True, indent=2)
        fh.write("\n")


def model_from_json(data: dict) -> tuple[ChainComplex, Optional[ChainMap], Optional[int]]:
    """Load a chain model: explicit matrices, or a graph with edge transport.

    Explicit form:  {"dims": [...], "boundaries": [[[...]]], "map": ...,
                     "complex_dim": n}
    Graph form:     {"vertices": [...], "edges": [[name, u, v]],
                     "monodromy": {name: value}, "higher": [...], ...}
    """
    try:
        if "dims" in data:
            complex_ = ChainComplex(data["dims"], data.get("boundaries", []))
        elif "vertices" in data:
            cw = CwComplex(tuple(data["vertices"]),
                           tuple(tuple(e) for e in data["edges"]),
                           tuple(data.get("higher", [])))
            complex_ = assemble(cw, LocalSystem(dict(data.get("monodromy", {}))))
        else:
            raise InputError("model file needs either 'dims' or 'vertices'")
        chain_map = None
        if "map" in data:
            blocks = tuple(tuple(tuple(Fraction(v) for v in row) for row in blk)
                           for blk in data["map"])
            chain_map = ChainMap(complex_, complex_, blocks)
        cdim = data.get("complex_dim")
        return complex_, chain_map, (int(cdim) if cdim is not None else None)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed model file: {exc}") from exc


def load_model(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(json.load(fh))


# --- ledger tables ----------------------------------------------------------


def table_to_json(table, differentials=(), columns=()) -> dict:
    """Serialize a sparse page with optional differentials and column specs."""
    out = {"entries": [[p, q, d] for (p, q), d in table.entries]}
    if differentials:
        out["differentials"] = [
            {"page": d.page, "source": list(d.source), "rank": d.declared_rank}
            for d in differentials
        ]
    if columns:
        out["columns"] = [
            {
                "index": c.index,
                "k_points": c.k_points,
                "fiber_dim": c.fiber_dim,
                "base": dict((str(deg), coeff) for deg, coeff in c.base_poly.coeffs)
                if c.base_poly is not None else None,
            }
            for c in columns
        ]
    return out


def table_from_json(data: dict):
    from .ledger import ColumnSpec, DifferentialDecl, E1Table
    from .poincare import PoincarePoly

    try:
        table = E1Table.from_dict({(p, q): d for p, q, d in data["entries"]})
        decls = tuple(
            DifferentialDecl(d["page"], tuple(d["source"]), d["rank"])
            for d in data.get("differentials", [])
        )
        columns = tuple(
            ColumnSpec(
                c["index"], c["k_points"], c["fiber_dim"],
                PoincarePoly.from_coeffs({int(k): v for k, v in c["base"].items()})
                if c.get("base") is not None else None,
            )
            for c in data.get("columns", [])
        )
        return table, decls, columns
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed table file: {exc}") from exc
