"""Constituent-based lower bound on QC minimum distance.

For nonzero constituents sorted by descending distance, the bound evaluates

    R_{i_1..i_t} = (d(C_{i_1}) - d(C_{i_2})) d(D_{i_1})
                 + (d(C_{i_2}) - d(C_{i_3})) d(D_{i_1,i_2}) + ...
                 + d(C_{i_t}) d(D_{i_1,...,i_t})

over the suffix chains {h}, {h-1,h}, ..., {1..h} and takes the minimum,
where D_I is the m-length cyclic code with check polynomial
prod_{i in I} m_{alpha^{u_i}} (equivalently: the cyclic code whose dual's
basic zero set is {alpha^{-u_i}}).  The value is reported exactly as this
published formula computes it; the test suite compares it against exact
distances and records any violation as a finding rather than silently
adjusting the formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field


from .errors import EmptyAssignment, RepNotACosetMin, UnknownConstituentDistance
from .gf import GF
from .lincode import DEFAULT_BUDGET, LinearCode, code_from_rows, min_distance
from .poly import Poly, cyclotomic_cosets
from .qc import ConstituentAssignment, CrtDecomposition, DistanceInfo, Slot, decompose_ring


def cyclic_code_from_gen(q_field: GF, m: int, gen_poly: Poly) -> LinearCode:
    """Cyclic code of length m generated by gen_poly (which divides x^m - 1)."""
    rows = []
    g = list(gen_poly.coeffs)
    for s in range(m - gen_poly.degree):
        row = [0] * m
        for i, c in enumerate(g):
            row[i + s] = c
        rows.append(row)
    return code_from_rows(q_field, m, rows)


def cyclic_from_nonzeros(q_field: GF, m: int, reps) -> LinearCode:
    """The associated cyclic code for a set of coset representatives: check
    polynomial prod m_{alpha^rep}, generator (x^m-1)/check."""
    decomp = decompose_ring(q_field, m, 1)
    table = cyclotomic_cosets(q_field.order, m)
    seen = set()
    check = Poly.one(q_field)
    for rep in reps:
        coset = table.coset_of(rep)
        if rep != coset[0]:
            raise RepNotACosetMin(f"{rep} is not the smallest element of its coset {coset}")
        if coset in seen:
            raise RepNotACosetMin(f"duplicate coset for representative {rep}")
        seen.add(coset)
        check = check * decomp.factors._ctx["coset_factor"][coset]
    gen = Poly.x_pow_minus_one(q_field, m) // check
    return cyclic_code_from_gen(q_field, m, gen)


def _bch_bound(m: int, zero_exponents: set[int]) -> int:
    """Longest cyclic run of consecutive exponent zeros, plus one."""
    if len(zero_exponents) >= m:
        return m + 1
    best = 0
    run = 0
    for e in range(2 * m):
        if e % m in zero_exponents:
            run += 1
            best = max(best, min(run, m))
        else:
            run = 0
    return best + 1


@dataclass(frozen=True)
class ChainEntry:
    slot_label: str
    exponent: int
    degree: int
    distance: DistanceInfo

    def to_json(self) -> dict:
        return {
            "slot": self.slot_label,
            "exponent": self.exponent,
            "degree": self.degree,
            "distance": self.distance.to_json(),
        }


@dataclass(frozen=True)
class DEntry:
    subset: tuple[int, ...]  # chain positions, 1-based
    gen_poly: Poly
    dim: int
    distance: int
    exact: bool

    def to_json(self) -> dict:
        return {
            "subset": list(self.subset),
            "generator": list(self.gen_poly.coeffs),
            "dim": self.dim,
            "distance": self.distance,
            "exact": self.exact,
        }


@dataclass
class GoReport:
    chain: list[ChainEntry]
    d_table: dict[tuple[int, ...], DEntry]
    r_values: dict[tuple[int, ...], int]
    d_go: int
    exact_mode: bool  # all ingredients exact
    findings: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "chain": [c.to_json() for c in self.chain],
            "d_table": {"D_" + ",".join(map(str, k)): v.to_json() for k, v in self.d_table.items()},
            "r_values": {"R_" + ",".join(map(str, k)): v for k, v in self.r_values.items()},
            "d_go": self.d_go,
            "exact_mode": self.exact_mode,
            "findings": self.findings,
        }


@dataclass(frozen=True)
class AssociatedCyclicFamily:
    """The sorted nonzero constituent chain with its nested cyclic codes."""

    decomp: CrtDecomposition
    chain: tuple[ChainEntry, ...]
    codes: dict  # subset (1-based positions) -> LinearCode


def _constituent_chain(decomp: CrtDecomposition, assignment: ConstituentAssignment,
                       budget: int) -> list[tuple[Slot, LinearCode, DistanceInfo]]:
    entries = []
    for (pa, (sg, sgs)) in zip(assignment.pairs, decomp.pair_slots):
        entries.append((sg, pa.cprime, pa.cprime_distance))
        entries.append((sgs, pa.cdouble_code(), pa.cdouble_distance))
    for sa, slot in zip(assignment.selfrec, decomp.selfrec_slots):
        entries.append((slot, sa.code, sa.distance))
    out = []
    for slot, code, info in entries:
        if code.k == 0:
            continue  # zero constituents drop out of the chain
        if info is None:
            if code.field.order**code.k > budget:
                raise UnknownConstituentDistance(
                    f"slot {slot.label}: distance unknown and enumeration exceeds budget"
                )
            info = DistanceInfo(min_distance(code, budget).d_exact, True, "enumerated")
        out.append((slot, code, info))
    if not out:
        raise EmptyAssignment("no nonzero constituents")
    # descending distance; ties broken by slot order in the decomposition
    order = {s.label: i for i, s in enumerate(decomp.slots)}
    out.sort(key=lambda t: (-t[2].value, order[t[0].label]))
    return out


def _d_code_entry(decomp: CrtDecomposition, subset: tuple[int, ...],
                  chain: list, budget: int) -> DEntry:
    q_field = decomp.q_field
    m = decomp.m
    table = decomp.factors._ctx["cosets"]
    check = Poly.one(q_field)
    zero_exps = set(range(m))
    for pos in subset:
        slot = chain[pos - 1][0]
        check = check * slot.factor
        zero_exps -= set(table.coset_of(slot.exponent))
    gen = Poly.x_pow_minus_one(q_field, m) // check
    dim = check.degree
    if dim == m:
        return DEntry(subset, gen, dim, 1, True)
    if q_field.order**dim <= budget and q_field.has_tables:
        code = cyclic_code_from_gen(q_field, m, gen)
        d = min_distance(code, budget).d_exact
        return DEntry(subset, gen, dim, d, True)
    return DEntry(subset, gen, dim, _bch_bound(m, zero_exps), False)


def associated_cyclic_family(decomp: CrtDecomposition, assignment: ConstituentAssignment,
                             budget: int = DEFAULT_BUDGET) -> AssociatedCyclicFamily:
    chain = _constituent_chain(decomp, assignment, budget)
    entries = tuple(
        ChainEntry(s.label, s.exponent, s.degree, info) for s, _, info in chain
    )
    codes = {}
    h = len(chain)
    for a in range(1, h + 1):
        for b in range(a, h + 1):
            subset = tuple(range(a, b + 1))
            e = _d_code_entry(decomp, subset, chain, budget)
            codes[subset] = cyclic_code_from_gen(decomp.q_field, decomp.m, e.gen_poly)
    return AssociatedCyclicFamily(decomp, entries, codes)


def go_bound(decomp: CrtDecomposition, assignment: ConstituentAssignment,
             distance_budget: int = DEFAULT_BUDGET, full_table: bool = False) -> GoReport:
    """Evaluate the telescoped constituent bound over the suffix chains."""
    chain = _constituent_chain(decomp, assignment, distance_budget)
    h = len(chain)
    d_vals = [info.value for _, _, info in chain]
    exact_mode = all(info.exact for _, _, info in chain)

    d_table: dict[tuple[int, ...], DEntry] = {}

    def dcode(subset: tuple[int, ...]) -> DEntry:
        if subset not in d_table:
            d_table[subset] = _d_code_entry(decomp, subset, chain, distance_budget)
        return d_table[subset]

    r_values: dict[tuple[int, ...], int] = {}
    findings: list[str] = []
    for start in range(h, 0, -1):
        idxs = tuple(range(start, h + 1))
        total = 0
        for a in range(len(idxs)):
            da = d_vals[idxs[a] - 1]
            dnext = d_vals[idxs[a + 1] - 1] if a + 1 < len(idxs) else 0
            prefix = idxs[: a + 1]
            entry = dcode(prefix)
            total += (da - dnext) * entry.distance
            if not entry.exact:
                exact_mode = False
        r_values[idxs] = total
    d_go = min(r_values.values())

    if full_table:
        # the displayed table enumerates every nonempty subset for small h
        if h <= 4:
            import itertools

            for t in range(1, h + 1):
                for combo in itertools.combinations(range(1, h + 1), t):
                    dcode(combo)

    # nesting monotonicity and the strict-positivity observation used by the
    # recursive family's distance argument
    full = tuple(range(1, h + 1))
    if h >= 2:
        head = dcode(full[:-1])
        if head.distance - dcode(full).distance <= 0:
            findings.append(
                f"d(D_{full[:-1]}) - d(D_{full}) = {head.distance - dcode(full).distance} <= 0"
            )
    report = GoReport(
        chain=[ChainEntry(s.label, s.exponent, s.degree, info) for s, _, info in chain],
        d_table=d_table,
        r_values=r_values,
        d_go=d_go,
        exact_mode=exact_mode,
        findings=findings,
    )
    return report
