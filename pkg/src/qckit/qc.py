"""Quasi-cyclic codes through the CRT decomposition of (F_q[x]/(x^m-1))^ell.

A QC code of index ell is assembled from constituent codes, one per
irreducible factor of x^m - 1, by spanning the trace formula

    c_g = sum_i Tr(x_i alpha^{-g u_i}) + sum_j (Tr(y'_j alpha^{-g v_j})
                                                + Tr(y''_j alpha^{-g w_j}))

over an F_q-basis of each constituent.  Conversely the constituents of any
QC code are recovered by evaluating phi-columns at alpha^exponent and
pulling the values back along the canonical subfield embeddings.

Exponent convention: v_j is the smallest exponent whose minimal polynomial
is the pair's g_j; the partner exponent is w_j = -v_j mod m exactly.  That
choice makes the pair-slot duality statements hold with plain Euclidean
duals, with no Frobenius twist: the constituents of the Euclidean dual are
(C''_j)^perp on the g_j slot, (C'_j)^perp on the g*_j slot, and Hermitian
duals on self-reciprocal slots (Euclidean on the degree-one x -+ 1 slots).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConstituentNotHSO,
    FieldMismatch,
    LengthMismatch,
    OrderingViolated,
    SlotSNotESO,
    UnknownConstituentDistance,
)
from .gf import GF, _embedding_pair, field_make
from .lincode import (
    DEFAULT_BUDGET,
    LinearCode,
    code_from_rows,
    concat_copies,
    dual_euclidean,
    dual_hermitian,
    duality_class,
    min_distance,
    subspace_leq,
    _rref,
)
from .poly import FactorSet, Poly, factor_xm1

DEFAULT_MATERIALIZE_MAX = 2048


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class Slot:
    """One CRT component: an irreducible factor with its evaluation exponent."""

    kind: str  # "pair_g" | "pair_gstar" | "selfrec"
    index: int  # pair number or self-reciprocal number (x-1 last)
    factor: Poly
    exponent: int
    degree: int
    cfield: GF
    exceptional: bool  # x - 1, or x + 1 with q odd: Euclidean duality applies

    @property
    def label(self) -> str:
        base = {"pair_g": "g", "pair_gstar": "g*", "selfrec": "f"}[self.kind]
        return f"{base}{self.index + 1}"


class CrtDecomposition:
    """Factored structure of (F_q[x]/(x^m-1))^ell with a fixed primitive root."""

    def __init__(self, q_field: GF, m: int, ell: int):
        if ell < 1:
            raise LengthMismatch("index ell must be >= 1")
        self.q_field = q_field
        self.m = m
        self.ell = ell
        self.factors: FactorSet = factor_xm1(q_field, m)
        self.w = self.factors.splitting_w
        self.common_field: GF = self.factors._ctx["K"]
        self.alpha: int = self.factors._ctx["alpha"]
        K = self.common_field
        self._alpha_pows = [1] * m
        for i in range(1, m):
            self._alpha_pows[i] = K.mul(self._alpha_pows[i - 1], self.alpha)
        slots = []
        for j, (g, gs) in enumerate(self.factors.pairs):
            v = self.factors.rep(g)
            d = g.degree
            cf = field_make(q_field.p, q_field.t * d)
            slots.append(Slot("pair_g", j, g, v, d, cf, False))
            slots.append(Slot("pair_gstar", j, gs, (m - v) % m, d, cf, False))
        for i, f in enumerate(self.factors.selfrec):
            u = self.factors.rep(f)
            d = f.degree
            cf = field_make(q_field.p, q_field.t * d)
            exceptional = d == 1 and (2 * u) % m == 0
            slots.append(Slot("selfrec", i, f, u, d, cf, exceptional))
        self.slots: tuple[Slot, ...] = tuple(slots)
        self._trace_tabs: dict[int, dict[int, int]] = {}

    @property
    def n(self) -> int:
        return self.m * self.ell

    @property
    def pair_slots(self) -> list[tuple[Slot, Slot]]:
        ps = [s for s in self.slots if s.kind == "pair_g"]
        qs = [s for s in self.slots if s.kind == "pair_gstar"]
        return list(zip(ps, qs))

    @property
    def selfrec_slots(self) -> list[Slot]:
        return [s for s in self.slots if s.kind == "selfrec"]

    def alpha_pow(self, e: int) -> int:
        return self._alpha_pows[e % self.m]

    def _trace_table(self, cfield: GF) -> dict[int, int]:
        """K-value of the embedded subfield -> relative trace down to F_q."""
        key = cfield.t
        tab = self._trace_tabs.get(key)
        if tab is not None:
            return tab
        K, base = self.common_field, self.q_field
        fwd, _ = _embedding_pair(cfield, K)
        _, base_inv = _embedding_pair(base, K)
        q = base.order
        d = cfield.t // base.t
        tab = {}
        for x in range(cfield.order):
            z = int(fwd[x])
            acc = z
            y = z
            for _ in range(d - 1):
                y = K.pow_(y, q)
                acc = K.add(acc, y)
            tab[z] = base_inv[acc]
        self._trace_tabs[key] = tab
        return tab

    def to_json(self) -> dict:
        return {
            "q": self.q_field.to_json(),
            "m": self.m,
            "ell": self.ell,
            "w": self.w,
            "common_field": self.common_field.to_json(),
            "alpha": self.alpha,
            "slots": [
                {
                    "label": s.label,
                    "kind": s.kind,
                    "factor": list(s.factor.coeffs),
                    "exponent": s.exponent,
                    "degree": s.degree,
                    "constituent_order": s.cfield.order,
                    "exceptional": s.exceptional,
                }
                for s in self.slots
            ],
        }


def decompose_ring(q_field: GF, m: int, ell: int) -> CrtDecomposition:
    return CrtDecomposition(q_field, m, ell)


# ---------------------------------------------------------------------------
# the phi map and the Hermitian product on R^ell


def phi(vec, m: int, ell: int) -> np.ndarray:
    """Flat vector of length m*ell -> (ell, m) array of polynomial coefficients."""
    vec = np.asarray(vec, dtype=np.int64)
    if vec.shape != (m * ell,):
        raise LengthMismatch(f"expected length {m * ell}, got {vec.shape}")
    return vec.reshape(m, ell).T.copy()


def phi_inv(arr: np.ndarray, m: int, ell: int) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64)
    if arr.shape != (ell, m):
        raise LengthMismatch(f"expected shape ({ell}, {m}), got {arr.shape}")
    return arr.T.reshape(m * ell).copy()


def ring_conj(field: GF, c: np.ndarray) -> np.ndarray:
    """Conjugation on F_q[x]/(x^m-1): x -> x^{m-1}, extended linearly."""
    m = len(c)
    out = np.zeros(m, dtype=np.int64)
    out[0] = c[0]
    out[1:] = c[:0:-1]
    return out


def ring_mul(field: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cyclic convolution: product in F_q[x]/(x^m-1)."""
    m = len(a)
    out = np.zeros(m, dtype=np.int64)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    k = (i + j) % m
                    out[k] = field.add(int(out[k]), field.mul(int(ai), int(bj)))
    return out


def r_hermitian_ip(field: GF, x_tuple: np.ndarray, y_tuple: np.ndarray) -> np.ndarray:
    """Sum_j x_j * conj(y_j) in F_q[x]/(x^m-1); tuples are (ell, m) arrays."""
    x_tuple = np.asarray(x_tuple, dtype=np.int64)
    y_tuple = np.asarray(y_tuple, dtype=np.int64)
    if x_tuple.shape != y_tuple.shape:
        raise LengthMismatch("tuples must have matching shape")
    m = x_tuple.shape[1]
    acc = np.zeros(m, dtype=np.int64)
    for xr, yr in zip(x_tuple, y_tuple):
        prod = ring_mul(field, xr, ring_conj(field, yr))
        acc = np.array([field.add(int(a), int(b)) for a, b in zip(acc, prod)], dtype=np.int64)
    return acc


def shift(vec: np.ndarray, s: int) -> np.ndarray:
    return np.roll(np.asarray(vec), s)


# ---------------------------------------------------------------------------
# assignments


@dataclass(frozen=True)
class DistanceInfo:
    value: int
    exact: bool
    how: str = ""

    def to_json(self) -> dict:
        return {"value": self.value, "exact": self.exact, "how": self.how}


@dataclass(frozen=True)
class PairAssignment:
    """C'_j plus the derivation of C''_j ("dual" or an explicit code)."""

    cprime: LinearCode
    cdouble: LinearCode | None = None  # None: materialize as dual_euclidean(cprime)
    cprime_distance: DistanceInfo | None = None
    cdouble_distance: DistanceInfo | None = None

    @property
    def dual_mode(self) -> bool:
        return self.cdouble is None

    def cdouble_code(self) -> LinearCode:
        return dual_euclidean(self.cprime) if self.cdouble is None else self.cdouble


@dataclass(frozen=True)
class SelfrecAssignment:
    code: LinearCode
    distance: DistanceInfo | None = None


@dataclass(frozen=True)
class ConstituentAssignment:
    pairs: tuple[PairAssignment, ...]
    selfrec: tuple[SelfrecAssignment, ...]

    def validate(self, decomp: CrtDecomposition):
        if len(self.pairs) != len(decomp.pair_slots):
            raise FieldMismatch("pair assignment count does not match the decomposition")
        if len(self.selfrec) != len(decomp.selfrec_slots):
            raise FieldMismatch("self-reciprocal assignment count mismatch")
        for pa, (sg, _) in zip(self.pairs, decomp.pair_slots):
            for code in (pa.cprime, pa.cdouble) if pa.cdouble is not None else (pa.cprime,):
                if code.field != sg.cfield:
                    raise FieldMismatch(f"slot {sg.label}: code over {code.field!r}, expected {sg.cfield!r}")
                if code.n != decomp.ell:
                    raise LengthMismatch(f"slot {sg.label}: length {code.n} != {decomp.ell}")
        for sa, slot in zip(self.selfrec, decomp.selfrec_slots):
            if sa.code.field != slot.cfield:
                raise FieldMismatch(f"slot {slot.label}: code over {sa.code.field!r}, expected {slot.cfield!r}")
            if sa.code.n != decomp.ell:
                raise LengthMismatch(f"slot {slot.label}: length {sa.code.n} != {decomp.ell}")

    def slot_codes(self, decomp: CrtDecomposition) -> list[tuple[Slot, LinearCode]]:
        out = []
        for pa, (sg, sgs) in zip(self.pairs, decomp.pair_slots):
            out.append((sg, pa.cprime))
            out.append((sgs, pa.cdouble_code()))
        for sa, slot in zip(self.selfrec, decomp.selfrec_slots):
            out.append((slot, sa.code))
        return out


def assignment_all_full(decomp: CrtDecomposition) -> ConstituentAssignment:
    from .lincode import full_space

    pairs = tuple(
        PairAssignment(full_space(sg.cfield, decomp.ell), full_space(sg.cfield, decomp.ell))
        for sg, _ in decomp.pair_slots
    )
    selfrec = tuple(SelfrecAssignment(full_space(s.cfield, decomp.ell)) for s in decomp.selfrec_slots)
    return ConstituentAssignment(pairs, selfrec)


def assignment_all_zero(decomp: CrtDecomposition) -> ConstituentAssignment:
    from .lincode import zero_code

    pairs = tuple(
        PairAssignment(zero_code(sg.cfield, decomp.ell), zero_code(sg.cfield, decomp.ell))
        for sg, _ in decomp.pair_slots
    )
    selfrec = tuple(SelfrecAssignment(zero_code(s.cfield, decomp.ell)) for s in decomp.selfrec_slots)
    return ConstituentAssignment(pairs, selfrec)


# ---------------------------------------------------------------------------
# assembly and extraction


@dataclass(frozen=True)
class QcCode:
    """A QC code: the flat [m*ell, k] code plus optional CRT provenance."""

    lin: LinearCode
    m: int
    ell: int
    decomp: CrtDecomposition | None = None
    assignment: ConstituentAssignment | None = None

    @property
    def n(self) -> int:
        return self.lin.n

    @property
    def k(self) -> int:
        return self.lin.k

    @property
    def field(self) -> GF:
        return self.lin.field

    def __repr__(self) -> str:
        return f"QcCode([{self.n},{self.k}] m={self.m} ell={self.ell} over {self.field!r})"


def dim_from_constituents(decomp: CrtDecomposition, assignment: ConstituentAssignment) -> int:
    assignment.validate(decomp)
    return sum(code.k * slot.degree for slot, code in assignment.slot_codes(decomp))


def assemble_qc(decomp: CrtDecomposition, assignment: ConstituentAssignment) -> QcCode:
    """Span the trace formula over an F_q-basis of every constituent code."""
    assignment.validate(decomp)
    K = decomp.common_field
    base = decomp.q_field
    m, ell = decomp.m, decomp.ell
    gens = []
    for slot, code in assignment.slot_codes(decomp):
        if code.k == 0:
            continue
        F = slot.cfield
        fwd, _ = _embedding_pair(F, K)
        trace_tab = decomp._trace_table(F)
        apow = [decomp.alpha_pow((-g * slot.exponent) % m) for g in range(m)]
        for row in code.gen:
            scale = 1
            for _ in range(slot.degree):
                zs = [int(fwd[F.mul(scale, int(v))]) for v in row]
                flat = np.zeros(m * ell, dtype=np.int64)
                for g in range(m):
                    ag = apow[g]
                    off = g * ell
                    for j, z in enumerate(zs):
                        flat[off + j] = trace_tab[K.mul(z, ag)]
                gens.append(flat)
                scale = F.mul(scale, F.gen)
    lin = code_from_rows(base, m * ell, gens)
    expected = dim_from_constituents(decomp, assignment)
    assert lin.k == expected, f"rank {lin.k} != constituent dimension {expected}"
    return QcCode(lin, m, ell, decomp, assignment)


def constituent_at_exponent(decomp: CrtDecomposition, flat: LinearCode, exp: int) -> LinearCode:
    """The CRT component of a flat QC code at evaluation point alpha^exp,
    pulled back to the canonical constituent field."""
    K = decomp.common_field
    base = decomp.q_field
    m, ell = decomp.m, decomp.ell
    exp %= m
    coset = decomp.factors._ctx["cosets"].coset_of(exp)
    d = len(coset)
    cfield = field_make(base.p, base.t * d)
    _, back = _embedding_pair(cfield, K)
    fwd_base, _ = _embedding_pair(base, K)
    point = decomp.alpha_pow(exp)
    rows = []
    for gen in flat.gen:
        arr = phi(gen, m, ell)
        row = []
        for j in range(ell):
            acc = 0
            for i in range(m - 1, -1, -1):
                acc = K.mul(acc, point)
                c = int(arr[j, i])
                if c:
                    acc = K.add(acc, int(fwd_base[c]))
            row.append(back[acc])
        rows.append(row)
    return code_from_rows(cfield, ell, rows)


def extract_assignment(decomp: CrtDecomposition, flat: LinearCode) -> ConstituentAssignment:
    pairs = []
    for sg, sgs in decomp.pair_slots:
        cp = constituent_at_exponent(decomp, flat, sg.exponent)
        cd = constituent_at_exponent(decomp, flat, sgs.exponent)
        pairs.append(PairAssignment(cp, cd))
    selfrec = tuple(
        SelfrecAssignment(constituent_at_exponent(decomp, flat, s.exponent))
        for s in decomp.selfrec_slots
    )
    return ConstituentAssignment(tuple(pairs), selfrec)


def is_shift_invariant(qc: QcCode) -> bool:
    """Closure under T^ell, the row shift of the m x ell array form."""
    shifted = [np.roll(row, qc.ell) for row in qc.lin.gen]
    gen, piv = _rref(qc.field, np.array(shifted, dtype=np.int64).reshape(-1, qc.n))
    return subspace_leq(LinearCode(qc.field, qc.n, gen, piv), qc.lin)


# ---------------------------------------------------------------------------
# duality at the constituent level


def _slot_duality(slot: Slot, code: LinearCode) -> dict:
    """SO/DC/SD of a self-reciprocal constituent under its induced product."""
    if slot.exceptional:
        fl = duality_class(code)
        return {"so": fl.eso, "dc": fl.edc, "sd": fl.esd, "product": "euclidean"}
    fl = duality_class(code)
    return {"so": fl.hso, "dc": fl.hdc, "sd": fl.hsd, "product": "hermitian"}


@dataclass(frozen=True)
class SlotWitness:
    label: str
    relation: str
    ok_so: bool
    ok_dc: bool
    ok_sd: bool


@dataclass(frozen=True)
class QcDualityReport:
    flags: object  # DualityFlags of the flat code
    witness: tuple[SlotWitness, ...] | None
    witness_eso: bool | None
    witness_edc: bool | None
    witness_esd: bool | None
    agree: bool | None

    def to_json(self) -> dict:
        out = {"flags": self.flags.to_json()}
        if self.witness is not None:
            out["witness"] = [
                {
                    "slot": w.label,
                    "relation": w.relation,
                    "so": w.ok_so,
                    "dc": w.ok_dc,
                    "sd": w.ok_sd,
                }
                for w in self.witness
            ]
            out["witness_flags"] = {
                "ESO": self.witness_eso,
                "EDC": self.witness_edc,
                "ESD": self.witness_esd,
            }
            out["agree"] = self.agree
        return out


def qc_duality_class(qc: QcCode) -> QcDualityReport:
    """Flat duality flags plus, when provenance is present, the
    constituent-level certificate: pair slots need C'' related to (C')^perp,
    self-reciprocal slots need the Hermitian (or exceptional Euclidean)
    relation.  Reports agreement between the two routes."""
    flags = duality_class(qc.lin)
    if qc.decomp is None or qc.assignment is None:
        return QcDualityReport(flags, None, None, None, None, None)
    witnesses = []
    for pa, (sg, sgs) in zip(qc.assignment.pairs, qc.decomp.pair_slots):
        cd = pa.cdouble_code()
        dual_cp = dual_euclidean(pa.cprime)
        so = subspace_leq(cd, dual_cp)
        dc = subspace_leq(dual_cp, cd)
        witnesses.append(SlotWitness(f"({sg.label},{sgs.label})", "pair-euclidean", so, dc, so and dc))
    for sa, slot in zip(qc.assignment.selfrec, qc.decomp.selfrec_slots):
        rel = _slot_duality(slot, sa.code)
        witnesses.append(
            SlotWitness(slot.label, rel["product"], bool(rel["so"]), bool(rel["dc"]), bool(rel["sd"]))
        )
    w_eso = all(w.ok_so for w in witnesses)
    w_edc = all(w.ok_dc for w in witnesses)
    w_esd = all(w.ok_sd for w in witnesses)
    agree = (w_eso == flags.eso) and (w_edc == flags.edc) and (w_esd == flags.esd)
    return QcDualityReport(flags, tuple(witnesses), w_eso, w_edc, w_esd, agree)


def qc_dual(qc: QcCode, cross_assert: bool = True) -> QcCode:
    """Euclidean dual with transferred provenance: pair slots swap roles and
    dualize, self-reciprocal slots take Hermitian (exceptional: Euclidean)
    duals; the prediction is cross-checked against the flat dual."""
    flat_dual = dual_euclidean(qc.lin)
    if qc.decomp is None or qc.assignment is None:
        return QcCode(flat_dual, qc.m, qc.ell)
    pairs = []
    for pa in qc.assignment.pairs:
        cd = pa.cdouble_code()
        pairs.append(PairAssignment(dual_euclidean(cd), dual_euclidean(pa.cprime)))
    selfrec = []
    for sa, slot in zip(qc.assignment.selfrec, qc.decomp.selfrec_slots):
        if slot.exceptional:
            selfrec.append(SelfrecAssignment(dual_euclidean(sa.code)))
        else:
            selfrec.append(SelfrecAssignment(dual_hermitian(sa.code)))
    pred = ConstituentAssignment(tuple(pairs), tuple(selfrec))
    if cross_assert:
        rebuilt = assemble_qc(qc.decomp, pred)
        assert rebuilt.lin == flat_dual, "constituent-level dual disagrees with the flat dual"
    return QcCode(flat_dual, qc.m, qc.ell, qc.decomp, pred)


# ---------------------------------------------------------------------------
# Galois closure


def code_power_q_qc(qc: QcCode, r: int) -> QcCode:
    from .lincode import code_power_q

    return QcCode(code_power_q(qc.lin, r), qc.m, qc.ell, qc.decomp, None)


def is_galois_closed_qc(qc: QcCode, r: int) -> bool:
    from .lincode import is_galois_closed

    return is_galois_closed(qc.lin, r)


def galois_alignment(decomp: CrtDecomposition, r: int) -> bool:
    """True when multiplication by r maps every cyclotomic coset to itself,
    so Frobenius-powering acts slotwise."""
    table = decomp.factors._ctx["cosets"]
    return all((s.exponent * r) % decomp.m in table.coset_of(s.exponent) for s in decomp.slots)


def galois_closure_theorem_check(qc: QcCode, r: int) -> dict:
    """Both sides of the closure equivalence, computed independently.

    Flat side: C^r compared with C as canonical matrices.  Constituent side:
    when multiplication by r fixes every cyclotomic coset (the aligned case),
    each extracted constituent must be Galois closed under its own induced
    conjugation x -> x^(r^degree) - the flat Frobenius restricts to the
    half-power map of each slot field, not to x -> x^r.  In the general
    (non-aligned) case the faithful condition couples slots:
    X_u(C) = X_{u r^{-1}}(C)^{(r)} for every slot exponent u."""
    from .lincode import code_power_q, is_galois_closed

    decomp = qc.decomp
    if decomp is None:
        raise LengthMismatch("theorem check needs provenance")
    flat_closed = is_galois_closed_qc(qc, r)
    aligned = galois_alignment(decomp, r)
    m = decomp.m
    r_inv = pow(r, -1, m)
    constituent_closed = True
    for slot in decomp.slots:
        left = constituent_at_exponent(decomp, qc.lin, slot.exponent)
        if aligned:
            if not is_galois_closed(left, r**slot.degree):
                constituent_closed = False
                break
        else:
            src = constituent_at_exponent(decomp, qc.lin, (slot.exponent * r_inv) % m)
            if code_power_q(src, r) != left:
                constituent_closed = False
                break
    return {
        "flat_closed": flat_closed,
        "constituent_closed": constituent_closed,
        "aligned": aligned,
        "agree": flat_closed == constituent_closed,
    }


# ---------------------------------------------------------------------------
# recursive families


@dataclass(frozen=True)
class FamilyPlan:
    """Recipe for the recursive family: a level-1 assignment whose pair slots
    get m^{u-1}-copies at level u, self-reciprocal slots before the last get
    m^{u-1}-copies, and the last (x - 1) slot receives the previous level."""

    q_field: GF
    m: int
    ell: int
    base: ConstituentAssignment
    u_max: int
    kind: str = "ESO"  # expected duality of the family: ESO, EDC or ESD
    materialize_max: int = DEFAULT_MATERIALIZE_MAX
    budget: int = DEFAULT_BUDGET


@dataclass
class FamilyLevel:
    u: int
    n: int
    k: int
    d_lower: int
    qc: QcCode | None = None
    rank_checked: bool | None = None
    duality_checked: bool | None = None

    def params(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.d_lower)

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "n": self.n,
            "k": self.k,
            "d_lower": self.d_lower,
            "materialized": self.qc is not None,
            "rank_checked": self.rank_checked,
            "duality_checked": self.duality_checked,
        }


def _distance_of(code: LinearCode, info: DistanceInfo | None, budget: int, what: str) -> DistanceInfo:
    if info is not None:
        return info
    if code.k == 0:
        return DistanceInfo(code.n + 1, True, "zero code")
    if code.field.order**code.k > budget:
        raise UnknownConstituentDistance(
            f"{what}: no distance given and q^k = {code.field.order}^{code.k} exceeds budget"
        )
    rep = min_distance(code, budget)
    return DistanceInfo(rep.d_exact, True, "enumerated")


def _kind_flags(code: LinearCode, kind: str, exceptional: bool) -> bool:
    fl = duality_class(code)
    if exceptional:
        return {"ESO": fl.eso, "EDC": fl.edc, "ESD": fl.esd}[kind]
    return {"ESO": fl.hso, "EDC": fl.hdc, "ESD": fl.hsd}[kind]


def build_family(plan: FamilyPlan) -> list[FamilyLevel]:
    decomp1 = decompose_ring(plan.q_field, plan.m, plan.ell)
    base = plan.base
    base.validate(decomp1)
    sr_slots = decomp1.selfrec_slots
    s = len(sr_slots)
    if sr_slots[-1].factor != Poly.make(plan.q_field, (plan.q_field.neg(1), 1)):
        raise SlotSNotESO("last self-reciprocal slot is not x - 1")
    if plan.kind not in ("ESO", "EDC", "ESD"):
        raise SlotSNotESO(f"unknown family kind {plan.kind}")
    if plan.kind != "ESO" and s != 1:
        raise SlotSNotESO("EDC/ESD families need x - 1 as the only self-reciprocal factor")
    for pa in base.pairs:
        if not pa.dual_mode:
            raise SlotSNotESO("family pair slots must derive C'' as the Euclidean dual of C'")

    # duality hypotheses
    for sa, slot in zip(base.selfrec[:-1], sr_slots[:-1]):
        if not _kind_flags(sa.code, "ESO", slot.exceptional):
            raise ConstituentNotHSO(f"slot {slot.label} constituent is not self-orthogonal")
    slot_s = sr_slots[-1]
    cs = base.selfrec[-1].code
    if not _kind_flags(cs, plan.kind, True):
        raise SlotSNotESO(f"slot {slot_s.label} constituent is not {plan.kind}")

    # ordering hypothesis: the x - 1 constituent must carry the smallest distance
    d_infos: list[DistanceInfo] = []
    for pa, (sg, sgs) in zip(base.pairs, decomp1.pair_slots):
        d_infos.append(_distance_of(pa.cprime, pa.cprime_distance, plan.budget, sg.label))
        d_infos.append(_distance_of(pa.cdouble_code(), pa.cdouble_distance, plan.budget, sgs.label))
    for sa, slot in zip(base.selfrec[:-1], sr_slots[:-1]):
        d_infos.append(_distance_of(sa.code, sa.distance, plan.budget, slot.label))
    d_s = _distance_of(cs, base.selfrec[-1].distance, plan.budget, slot_s.label)
    if not d_s.exact:
        raise UnknownConstituentDistance("the x - 1 constituent needs an exact distance")
    for di in d_infos:
        if di.value < d_s.value:
            raise OrderingViolated(
                f"constituent distance {di.value} below the x - 1 slot distance {d_s.value}"
            )

    m, ell = plan.m, plan.ell
    sum_deg_pairs = sum(g.degree for g, _ in decomp1.factors.pairs)
    sum_deg_k_sr = sum(
        slot.degree * sa.code.k for sa, slot in zip(base.selfrec[:-1], sr_slots[:-1])
    )
    k_s = cs.k

    levels: list[FamilyLevel] = []
    prev_flat: LinearCode | None = None
    for u in range(1, plan.u_max + 1):
        n_u = m**u * ell
        k_u = ell * ((m**u - 1) // (m - 1)) * sum_deg_pairs + u * sum_deg_k_sr + k_s
        d_u = m ** (u - 1) * d_s.value
        level = FamilyLevel(u, n_u, k_u, d_u)
        if n_u <= plan.materialize_max:
            copies = m ** (u - 1)
            ell_u = copies * ell
            decomp_u = decomp1 if u == 1 else decompose_ring(plan.q_field, m, ell_u)
            pairs_u = tuple(
                PairAssignment(concat_copies(pa.cprime, copies) if u > 1 else pa.cprime)
                for pa in base.pairs
            )
            sr_u = [
                SelfrecAssignment(concat_copies(sa.code, copies) if u > 1 else sa.code)
                for sa in base.selfrec[:-1]
            ]
            last = cs if u == 1 else prev_flat
            sr_u.append(SelfrecAssignment(last))
            asn_u = ConstituentAssignment(pairs_u, tuple(sr_u))
            qc = assemble_qc(decomp_u, asn_u)
            level.qc = qc
            level.rank_checked = qc.k == k_u
            fl = duality_class(qc.lin)
            level.duality_checked = {"ESO": fl.eso, "EDC": fl.edc, "ESD": fl.esd}[plan.kind]
            prev_flat = qc.lin
        else:
            prev_flat = None
        levels.append(level)
        if prev_flat is None and u < plan.u_max:
            # formula-level only from here on
            for uu in range(u + 1, plan.u_max + 1):
                n_uu = m**uu * ell
                k_uu = ell * ((m**uu - 1) // (m - 1)) * sum_deg_pairs + uu * sum_deg_k_sr + k_s
                levels.append(FamilyLevel(uu, n_uu, k_uu, m ** (uu - 1) * d_s.value))
            break
    return levels


def sqrt_like_check(levels: list[FamilyLevel], ell: int, c: float) -> dict:
    """Checks d_u >= c * sqrt(n_u) for u >= 2 and reports the largest uniform
    constant admissible for this family."""
    per_level = {}
    for lv in levels:
        if lv.u >= 2:
            # squared comparison with a hair of slack: u = 2 sits exactly on
            # the boundary m^{u-1} = sqrt(m^u) and must not fail to rounding
            per_level[lv.u] = bool(lv.d_lower**2 * (1 + 1e-12) >= c * c * lv.n)
    m = levels[0].n // ell if levels else 0
    d1 = levels[0].d_lower if levels else 0
    c_uniform = min(d1 / math.sqrt(ell), math.sqrt(m)) if levels else 0.0
    return {"c": c, "per_level": per_level, "all_ok": all(per_level.values()) if per_level else True,
            "c_uniform": c_uniform}
