"""JSON (de)serialization of fields, codes, and construction specs.

Element serialization is the integer index of the element ordering; a field
is {p, t, modulus}; a code is {field, n, rows} with rows of element indices.
A construction spec describes one constituent assignment:

    {"q": {"p": P, "t": T}, "m": M, "ell": L,
     "pairs":   [{"rep": v, "cprime_rows": [[...]],
                  "cdoubleprime": "dual" | [[...]],
                  "cprime_distance": {"value": d, "exact": true},   # optional
                  "cdoubleprime_distance": {...}}],                 # optional
     "selfrec": [{"rep": u, "rows": [[...]],
                  "distance": {...}}]}                              # optional

Reps may be any member of the intended cyclotomic coset.
"""

from __future__ import annotations

import json

from .errors import FieldMismatch, QCKitError
from .gf import GF, field_make
from .lincode import LinearCode, code_from_rows, zero_code
from .qc import (
    ConstituentAssignment,
    CrtDecomposition,
    DistanceInfo,
    PairAssignment,
    SelfrecAssignment,
    decompose_ring,
)


def field_from_json(obj: dict) -> GF:
    fld = field_make(int(obj["p"]), int(obj["t"]))
    if "modulus" in obj and list(obj["modulus"]) != list(fld.modulus):
        raise FieldMismatch("non-canonical modulus in field description")
    return fld


def code_from_json(obj: dict) -> LinearCode:
    fld = field_from_json(obj["field"])
    return code_from_rows(fld, int(obj["n"]), obj.get("rows", []))


def code_to_json(code: LinearCode) -> dict:
    return code.to_json()


def _distance_from_json(obj) -> DistanceInfo | None:
    if obj is None:
        return None
    return DistanceInfo(int(obj["value"]), bool(obj.get("exact", False)), obj.get("how", "given"))


def assignment_from_spec(spec: dict) -> tuple[CrtDecomposition, ConstituentAssignment]:
    q_field = field_from_json(spec["q"])
    m = int(spec["m"])
    ell = int(spec["ell"])
    decomp = decompose_ring(q_field, m, ell)
    table = decomp.factors._ctx["cosets"]

    pair_by_coset = {}
    for sg, sgs in decomp.pair_slots:
        key = table.coset_of(sg.exponent)
        pair_by_coset[key] = (sg, sgs)
        pair_by_coset[table.coset_of(sgs.exponent)] = (sg, sgs)
    entries = {}
    for ent in spec.get("pairs", []):
        coset = table.coset_of(int(ent["rep"]) % m)
        if coset not in pair_by_coset:
            raise QCKitError(f"rep {ent['rep']} does not belong to a reciprocal pair")
        sg, sgs = pair_by_coset[coset]
        cprime = code_from_rows(sg.cfield, ell, ent["cprime_rows"])
        cdp = ent.get("cdoubleprime", "dual")
        cdouble = None if cdp == "dual" else code_from_rows(sgs.cfield, ell, cdp)
        entries[sg.label] = PairAssignment(
            cprime,
            cdouble,
            _distance_from_json(ent.get("cprime_distance")),
            _distance_from_json(ent.get("cdoubleprime_distance")),
        )
    pairs = []
    for sg, sgs in decomp.pair_slots:
        if sg.label in entries:
            pairs.append(entries[sg.label])
        else:
            pairs.append(PairAssignment(zero_code(sg.cfield, ell), zero_code(sgs.cfield, ell)))

    sr_entries = {}
    for ent in spec.get("selfrec", []):
        coset = table.coset_of(int(ent["rep"]) % m)
        slot = next((s for s in decomp.selfrec_slots if table.coset_of(s.exponent) == coset), None)
        if slot is None:
            raise QCKitError(f"rep {ent['rep']} is not a self-reciprocal slot")
        sr_entries[slot.label] = SelfrecAssignment(
            code_from_rows(slot.cfield, ell, ent["rows"]),
            _distance_from_json(ent.get("distance")),
        )
    selfrec = []
    for slot in decomp.selfrec_slots:
        if slot.label in sr_entries:
            selfrec.append(sr_entries[slot.label])
        else:
            selfrec.append(SelfrecAssignment(zero_code(slot.cfield, ell)))
    assignment = ConstituentAssignment(tuple(pairs), tuple(selfrec))
    assignment.validate(decomp)
    return decomp, assignment


def assignment_to_spec(decomp: CrtDecomposition, assignment: ConstituentAssignment) -> dict:
    pairs = []
    for pa, (sg, sgs) in zip(assignment.pairs, decomp.pair_slots):
        ent = {
            "rep": sg.exponent,
            "cprime_rows": [[int(v) for v in row] for row in pa.cprime.gen],
            "cdoubleprime": "dual" if pa.dual_mode else
            [[int(v) for v in row] for row in pa.cdouble.gen],
        }
        if pa.cprime_distance:
            ent["cprime_distance"] = pa.cprime_distance.to_json()
        if pa.cdouble_distance:
            ent["cdoubleprime_distance"] = pa.cdouble_distance.to_json()
        pairs.append(ent)
    selfrec = []
    for sa, slot in zip(assignment.selfrec, decomp.selfrec_slots):
        ent = {"rep": slot.exponent, "rows": [[int(v) for v in row] for row in sa.code.gen]}
        if sa.distance:
            ent["distance"] = sa.distance.to_json()
        selfrec.append(ent)
    return {
        "q": decomp.q_field.to_json(),
        "m": decomp.m,
        "ell": decomp.ell,
        "pairs": pairs,
        "selfrec": selfrec,
    }


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj: dict, path: str | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text
