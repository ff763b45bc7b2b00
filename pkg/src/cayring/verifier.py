"""Executable checks of the structural theorems about CAY(R) on concrete rings.

Every check fills two dictionaries with the same keys: ``predicted`` values
come from ring-level formulas (strata sizes, ideal closures, local factor
data) and ``oracle`` values from exact graph searches.  A report passes
exactly when the two dictionaries agree.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import invariants as inv
from .dsl import ring_from_spec
from .errors import CapExceeded
from .graph import (
    ISOMORPHISM_CAP,
    are_isomorphic,
    build_cay,
    build_reg,
    build_total_graph,
    build_unitary_cayley,
    complement,
    induced_subgraph,
    quotient_graph,
    translation_is_automorphism,
)
from .ring import (
    DEFAULT_ORDER_CAP,
    FiniteRing,
    factorize,
    ideal_closure,
    is_field,
    is_local,
    local_factor_data,
    make_ring,
    min_unit_sum_length,
    quotient_by_ideal,
)


@dataclass(frozen=True)
class Caps:
    order: int = DEFAULT_ORDER_CAP
    hole: int = inv.HOLE_CAP
    hamiltonian: int = inv.HAMILTON_CAP
    exact: int = inv.EXACT_CAP
    isomorphism: int = ISOMORPHISM_CAP
    connectivity: int = 512
    translations: int = 64
    path_pairs: int = 81


@dataclass
class VerificationReport:
    theorem: str
    ring: str
    status: str  # pass | fail | skipped | n/a
    predicted: dict = field(default_factory=dict)
    oracle: dict = field(default_factory=dict)
    witness: dict | None = None
    millis: float = 0.0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timings: bool = False) -> dict:
        doc = asdict(self)
        doc["predicted"] = _jsonable(self.predicted)
        doc["oracle"] = _jsonable(self.oracle)
        doc["witness"] = _jsonable(self.witness)
        if not timings:
            doc.pop("millis")
        return doc


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _fmt(x) -> str:
    if isinstance(x, dict):
        return ";".join(f"{k}={_fmt(v)}" for k, v in x.items())
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return str(x)


class NotApplicable(Exception):
    pass


# ---------------------------------------------------------------------------
# per-ring context: graphs are built once and shared across checks


class RingContext:
    def __init__(self, spec: str, caps: Caps = Caps(), ring: FiniteRing | None = None):
        self.spec = spec
        self.caps = caps
        self.R = ring if ring is not None else ring_from_spec(spec, caps.order)

    @cached_property
    def S(self):
        return self.R.strata

    @cached_property
    def G(self):
        return build_cay(self.R)

    @cached_property
    def components(self):
        return inv.components(self.G)

    @cached_property
    def connected(self) -> bool:
        return len(self.components) == 1

    @cached_property
    def diameter(self):
        return math.inf if not self.connected else inv.diameter(self.G)

    @cached_property
    def translations_verified(self) -> bool:
        """True when every translation is checked to be an automorphism of CAY(R)."""
        return all(translation_is_automorphism(self.G, self.R, g) for g in range(self.R.order))

    @cached_property
    def local(self) -> bool:
        return is_local(self.R)

    @cached_property
    def factor_data(self):
        return local_factor_data(self.R)

    @property
    def nZ(self) -> int:
        return len(self.S.zero_divisors)

    @property
    def nNil(self) -> int:
        return len(self.S.nilradical)

    def need(self, what: str, size: int, cap: int):
        if size > cap:
            raise CapExceeded(what, size, cap)


# ---------------------------------------------------------------------------
# checks


def check_lemma_1_1(c: RingContext):
    R, G = c.R, c.G
    pred = {
        "edgeless": is_field(R),
        "complete": False,
        "degree": c.nZ - 1,
        "translations_automorphic": True,
        "components_isomorphic": True,
    }
    degrees = sorted(set(G.degrees.tolist()))
    elements = range(R.order) if R.order <= c.caps.translations else range(c.caps.translations)
    comps = c.components
    H0 = induced_subgraph(G, comps[0])
    c.need("component isomorphism", H0.n, c.caps.isomorphism)
    witness = {}
    bad_g = [g for g in elements if not translation_is_automorphism(G, R, g)]
    iso = True
    for comp in comps[1:]:
        if not are_isomorphic(H0, induced_subgraph(G, comp))[0]:
            iso = False
            witness["non_isomorphic_component"] = comp
            break
    orc = {
        "edgeless": G.num_edges == 0,
        "complete": G.is_complete(),
        "degree": degrees[0] if len(degrees) == 1 else degrees,
        "translations_automorphic": not bad_g,
        "components_isomorphic": iso,
    }
    if bad_g:
        witness["bad_translation"] = bad_g[0]
    if c.local:
        m = len(R.strata.zero_divisors)
        pred["local_shape"] = [R.order // m, m, True]
        orc["local_shape"] = [len(comps), sorted({len(x) for x in comps})[0] if len({len(x) for x in comps}) == 1
                              else sorted({len(x) for x in comps}),
                              all(induced_subgraph(G, x).is_complete() for x in comps)]
    note = "" if R.order <= c.caps.translations else f"translations checked for the first {c.caps.translations} elements"
    return pred, orc, witness or None, note


def check_thm_2_2(c: RingContext):
    R = c.R
    closure = ideal_closure(R, c.S.zero_divisors_mask)
    msl = min_unit_sum_length(R)
    pred = {"connected": bool(closure.all()), "d01": msl, "diameter": msl}
    orc = {
        "connected": c.connected,
        "d01": inv.distance(c.G, 0, R.one),
        "diameter": c.diameter,
    }
    return pred, orc, None, ""


def check_cor_2_3(c: RingContext):
    S = c.S
    pred = {"partition": True, "cay_is_complement_of_unitary": True}
    partition = not (S.units_mask & S.zero_divisors_mask).any() and bool(
        (S.units_mask | S.zero_divisors_mask).all())
    orc = {
        "partition": partition,
        "cay_is_complement_of_unitary": complement(c.G) == build_unitary_cayley(c.R),
    }
    return pred, orc, None, ""


def check_lemma_2_4(c: RingContext):
    R, S = c.R, c.S
    q = quotient_by_ideal(R, S.nilradical_mask)
    qz = q.ring.strata.zero_divisors_mask
    mismatches = int((qz[q.projection] != S.zero_divisors_mask).sum())
    Gq = build_cay(q.ring)
    pred = {"pullback_mismatches": 0, "diameter": inv.diameter(Gq)}
    orc = {"pullback_mismatches": mismatches, "diameter": c.diameter}
    return pred, orc, None, ""


def check_thm_2_5(c: RingContext):
    if c.local:
        m = c.nZ
        pred = {"connected": c.R.order == m, "shape": [c.R.order // m, m, True]}
        sizes = sorted({len(x) for x in c.components})
        orc = {
            "connected": c.connected,
            "shape": [len(c.components), sizes[0] if len(sizes) == 1 else sizes,
                      all(induced_subgraph(c.G, x).is_complete() for x in c.components)],
        }
        return pred, orc, None, "local ring: checked the disjoint-union-of-cliques shape"
    pred = {"connected": True, "diameter": 2}
    orc = {"connected": c.connected, "diameter": c.diameter}
    return pred, orc, None, ""


def check_lemma_2_6(c: RingContext):
    R, S = c.R, c.S
    nil = np.flatnonzero(S.nilradical_mask)
    z = S.zero_divisors_mask
    shifted = z[R.add_table[:, nil]]
    bad = np.argwhere(shifted != z[:, None])
    witness = None
    if bad.size:
        x, j = bad[0]
        witness = {"x": int(x), "a": int(nil[j])}
    return {"violations": 0}, {"violations": int(len(bad))}, witness, ""


def _field_orders(c: RingContext) -> list[int]:
    if c.local or any(f.maximal_ideal_size != 1 for f in c.factor_data):
        raise NotApplicable("not a product of at least two fields")
    return [f.order for f in c.factor_data]


def check_lemma_2_7(c: RingContext):
    fields = _field_orders(c)
    G, R = c.G, c.R
    bound = c.nZ - 1
    c.need("path-family flow cross-check", R.order, c.caps.connectivity)
    if R.order <= c.caps.path_pairs:
        pairs = [(x, y) for x in range(R.order) for y in range(R.order) if x != y]
        note = "all ordered pairs"
    else:
        pairs = [(0, y) for y in range(1, R.order)]
        note = "pairs (0, y); other pairs follow by translation"
    from .invariants.connectivity import _SplitNetwork

    net = _SplitNetwork(G)
    # translations are automorphisms, so local connectivity depends on y - x only
    flow_by_diff = {}
    all_valid = all_bound = all_flow = True
    worst = None
    min_size = math.inf
    for x, y in pairs:
        fam = inv.lemma27_path_family(fields, x, y)
        problems = fam.validate(G)
        d = R.sub(y, x)
        if d not in flow_by_diff:
            flow_by_diff[d] = net.value(0, d)
        size = len(fam)
        min_size = min(min_size, size)
        ok_valid, ok_bound, ok_flow = not problems, size >= bound, size <= flow_by_diff[d]
        if not (ok_valid and ok_bound and ok_flow) and worst is None:
            worst = {"pair": [x, y], "problems": problems[:5], "size": size, "flow": flow_by_diff[d]}
        all_valid &= ok_valid
        all_bound &= ok_bound
        all_flow &= ok_flow
    pred = {"valid": True, "size_at_least_bound": True, "size_within_flow": True}
    orc = {"valid": all_valid, "size_at_least_bound": all_bound, "size_within_flow": all_flow}
    witness = worst or {"bound": bound, "min_family_size": min_size, "pairs": len(pairs)}
    return pred, orc, witness, note


def _require_nonlocal(c: RingContext):
    if c.local:
        raise NotApplicable("local ring")


def check_thm_2_8(c: RingContext):
    _require_nonlocal(c)
    c.need("connectivity flows", c.R.order, c.caps.connectivity)
    G, S = c.G, c.S
    cut = sorted(S.zero_divisors - S.nilradical)
    transitive = c.translations_verified
    pred = {"kappa": c.nZ - c.nNil, "kappa_edge": c.nZ - 1, "cut_separates": True,
            "kappa_le_kappa_edge_le_delta": True}
    k, ke, d = inv.vertex_connectivity(G, transitive), inv.edge_connectivity(G), inv.minimum_degree(G)
    orc = {
        "kappa": k,
        "kappa_edge": ke,
        "cut_separates": inv.separates(G, cut, sorted(S.nilradical), sorted(S.regular)),
        "kappa_le_kappa_edge_le_delta": k <= ke <= d,
    }
    return pred, orc, None, ""


def check_cor_2_9(c: RingContext):
    _require_nonlocal(c)
    if not any(f.residue_field_size == 2 for f in c.factor_data):
        raise NotApplicable("no residue field of order 2")
    c.need("connectivity flows", c.R.order, c.caps.connectivity)
    T = build_total_graph(c.R)
    iso, mapping = are_isomorphic(T, c.G, cap=c.caps.isomorphism)
    # T inherits vertex-transitivity from CAY(R) through the isomorphism
    pred = {"isomorphic": True, "kappa": c.nZ - c.nNil, "kappa_edge": c.nZ - 1}
    orc = {"isomorphic": iso, "kappa": inv.vertex_connectivity(T, iso and c.translations_verified), "kappa_edge": inv.edge_connectivity(T)}
    return pred, orc, {"mapping": mapping} if iso else None, ""


def check_thm_2_10(c: RingContext):
    _require_nonlocal(c)
    cycle = inv.find_hamiltonian_cycle(c.G, cap=c.caps.hamiltonian)
    ok = cycle is not None and inv.is_hamiltonian_cycle(c.G, cycle)
    return {"hamiltonian": True}, {"hamiltonian": ok}, {"cycle": cycle}, ""


def _nil_cosets(c: RingContext) -> list[tuple[int, ...]]:
    R = c.R
    nil = np.flatnonzero(c.S.nilradical_mask)
    cosets = {tuple(sorted(R.add_table[x, nil].tolist())) for x in range(R.order)}
    return sorted(cosets)


def check_thm_3_1(c: RingContext):
    cosets = _nil_cosets(c)
    _, cert = quotient_graph(c.G)
    classes = sorted(cert.classes)
    pred = {"num_classes": c.R.order // c.nNil, "classes_are_nil_cosets": True}
    orc = {"num_classes": len(classes), "classes_are_nil_cosets": classes == cosets}
    witness = None if classes == cosets else {"first_class_mismatch": next(
        (list(a), list(b)) for a, b in zip(classes + [()] * len(cosets), cosets) if a != b)}
    return pred, orc, witness, ""


def check_cor_3_2(c: RingContext):
    Q, _ = quotient_graph(c.G)
    c.need("quotient isomorphism", Q.n, c.caps.isomorphism)
    RJ = quotient_by_ideal(c.R, c.S.jacobson_mask).ring
    H = build_cay(RJ)
    iso, mapping = are_isomorphic(Q, H, cap=c.caps.isomorphism)
    pred = {"order": c.R.order // len(c.S.jacobson), "isomorphic": True}
    orc = {"order": Q.n, "isomorphic": iso}
    return pred, orc, {"mapping": mapping} if iso else None, ""


def check_thm_3_4(c: RingContext):
    data = c.factor_data
    c.need("odd-hole search", c.R.order, c.caps.hole)
    perfect_pred = len(data) <= 2 or any(f.residue_field_size == 2 for f in data)
    res = inv.is_perfect_small(c.G, cap=c.caps.hole)
    witness = None
    if not res.perfect:
        H = complement(c.G) if res.in_complement else c.G
        valid = (inv.is_induced_cycle(H, res.hole) and len(res.hole) >= 5 and len(res.hole) % 2 == 1)
        witness = {"hole": res.hole, "graph": "complement" if res.in_complement else "graph",
                   "valid": valid}
        oracle_perfect = False if valid else "invalid-witness"
    else:
        oracle_perfect = True
    return ({"perfect": perfect_pred}, {"perfect": oracle_perfect}, witness,
            "finite instance of a statement about zero-dimensional semi-local rings")


def check_thm_4_1(c: RingContext):
    if is_field(c.R):
        raise NotApplicable("integral domain")
    Greg = build_reg(c.R)
    c.need("regular-graph clique/colouring", Greg.n, c.caps.exact)
    w, _ = inv.max_clique(Greg, cap=c.caps.exact)
    x, _ = inv.chromatic_number(Greg, cap=c.caps.exact)
    pred = {"omega_finite": True, "chi_finite": True}
    orc = {"omega_finite": math.isfinite(w), "chi_finite": math.isfinite(x)}
    return pred, orc, None, "only the finite-ring direction is checkable"


def _ordered_by_residue(c: RingContext) -> FiniteRing:
    data = c.factor_data
    order = sorted(range(len(data)), key=lambda i: (data[i].residue_field_size, i))
    if order == list(range(len(data))):
        return c.R
    return make_ring([c.R.factors[i] for i in order], order_cap=c.caps.order)


def check_thm_4_2(c: RingContext):
    from .invariants.constructions import regular_clique_chromatic_formula

    Ro = _ordered_by_residue(c)
    formula = regular_clique_chromatic_formula(Ro)
    Greg = build_reg(c.R)
    c.need("regular-graph clique/colouring", Greg.n, c.caps.exact)
    w, clique = inv.max_clique(Greg, cap=c.caps.exact)
    x, col = inv.chromatic_number(Greg, cap=c.caps.exact)
    vertices, coloring = inv.color_regular_product(Ro)
    Go = build_reg(Ro)
    assert vertices == sorted(Ro.strata.regular)
    pred = {"omega": formula, "chi": formula, "latin_palette": formula, "latin_proper": True}
    orc = {"omega": w, "chi": x, "latin_palette": coloring.palette_size,
           "latin_proper": coloring.is_proper(Go) and col.is_proper(Greg)}
    witness = {"clique": clique, "latin_coloring": coloring.colors}
    note = "" if Ro is c.R else "factors reordered by residue-field size for the colouring"
    return pred, orc, witness, note


CHECKS: dict[str, Callable] = {
    "lemma_1_1": check_lemma_1_1,
    "thm_2_2": check_thm_2_2,
    "cor_2_3": check_cor_2_3,
    "lemma_2_4": check_lemma_2_4,
    "thm_2_5": check_thm_2_5,
    "lemma_2_6": check_lemma_2_6,
    "lemma_2_7": check_lemma_2_7,
    "thm_2_8": check_thm_2_8,
    "cor_2_9": check_cor_2_9,
    "thm_2_10": check_thm_2_10,
    "thm_3_1": check_thm_3_1,
    "cor_3_2": check_cor_3_2,
    "thm_3_4": check_thm_3_4,
    "thm_4_1": check_thm_4_1,
    "thm_4_2": check_thm_4_2,
}
THEOREM_IDS = tuple(CHECKS)


def verify(theorem_id: str, ring, caps: Caps = Caps(), context: RingContext | None = None) -> VerificationReport:
    """Run one check on one ring (a DSL string or a prepared context)."""
    if theorem_id not in CHECKS:
        raise KeyError(f"unknown theorem id {theorem_id!r}")
    if context is None:
        context = ring if isinstance(ring, RingContext) else RingContext(ring, caps)
    start = time.perf_counter()
    try:
        pred, orc, witness, note = CHECKS[theorem_id](context)
    except NotApplicable as exc:
        return VerificationReport(theorem_id, context.spec, "n/a", note=str(exc),
                                  millis=(time.perf_counter() - start) * 1e3)
    except CapExceeded as exc:
        return VerificationReport(theorem_id, context.spec, "skipped", note=str(exc),
                                  millis=(time.perf_counter() - start) * 1e3)
    status = "pass" if pred == orc else "fail"
    return VerificationReport(theorem_id, context.spec, status, pred, orc, witness,
                              (time.perf_counter() - start) * 1e3, note)


# ---------------------------------------------------------------------------
# ring families


def local_pool(max_order: int) -> list[str]:
    """DSL strings of every local ring the DSL can express with order <= max_order."""
    out = []
    for q in range(2, max_order + 1):
        f = factorize(q)
        if len(f) != 1:
            continue
        p, k = f[0]
        out.append((q, 0, f"Z{q}"))
        if k >= 2:
            out.append((q, 1, f"GF({q})"))
        for base in range(2, q):
            bf = factorize(base)
            if len(bf) == 1 and bf[0][0] == p:
                m = round(math.log(q, base))
                if m >= 2 and base**m == q:
                    out.append((q, 2, f"GF({base})[t]/(t^{m})"))
    return [s for _, _, s in sorted(out)]


def _residue_size(spec: str) -> int:
    R = ring_from_spec(spec)
    (d,) = local_factor_data(R)
    return d.residue_field_size


@dataclass(frozen=True)
class ZnFamily:
    n_max: int
    n_min: int = 2

    def specs(self) -> list[str]:
        return [f"Z{n}" for n in range(self.n_min, self.n_max + 1)]


@dataclass(frozen=True)
class ProductFamily:
    """Products of ``k`` local rings, ``k`` in ``factor_counts``, with total
    order at most ``max_order`` and each factor of order at most
    ``factor_max_order`` (if given).  Each multiset of factors appears once,
    sorted by residue-field size, then order, then pool position."""

    factor_counts: tuple[int, ...]
    max_order: int
    factor_max_order: int | None = None

    def specs(self) -> list[str]:
        bound = self.max_order // 2 if min(self.factor_counts) > 1 else self.max_order
        if self.factor_max_order is not None:
            bound = min(bound, self.factor_max_order)
        pool = local_pool(bound)
        orders = [ring_from_spec(s).order for s in pool]
        residues = [_residue_size(s) for s in pool]
        out = []
        for k in sorted(self.factor_counts):
            for combo in itertools.combinations_with_replacement(range(len(pool)), k):
                if math.prod(orders[i] for i in combo) > self.max_order:
                    continue
                combo = sorted(combo, key=lambda i: (residues[i], orders[i], i))
                out.append(" x ".join(pool[i] for i in combo))
        return out


def family_specs(families: Iterable) -> list[str]:
    seen, out = set(), []
    for fam in families:
        for s in fam.specs():
            if s not in seen:
                seen.add(s)
                out.append(s)
    return out


# ---------------------------------------------------------------------------
# suites


@dataclass
class SuiteResult:
    reports: list[VerificationReport]

    def summary(self) -> dict[str, dict[str, int]]:
        table: dict[str, dict[str, int]] = {}
        for r in self.reports:
            row = table.setdefault(r.theorem, {"pass": 0, "fail": 0, "skipped": 0, "n/a": 0})
            row[r.status] += 1
        return {k: table[k] for k in THEOREM_IDS if k in table}

    @property
    def failures(self) -> list[VerificationReport]:
        return [r for r in self.reports if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary_text(self) -> str:
        lines = [f"{'theorem':<10} {'pass':>6} {'fail':>6} {'skipped':>8} {'n/a':>6}"]
        for k, row in self.summary().items():
            lines.append(f"{k:<10} {row['pass']:>6} {row['fail']:>6} {row['skipped']:>8} {row['n/a']:>6}")
        return "\n".join(lines) + "\n"

    def to_csv(self, timings: bool = False) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theorem", "ring", "predicted", "oracle", "pass", "millis"])
        for r in self.reports:
            w.writerow([r.theorem, r.ring, _fmt(r.predicted), _fmt(r.oracle), r.status,
                        f"{r.millis:.1f}" if timings else ""])
        return buf.getvalue()

    def to_json(self, timings: bool = False) -> dict:
        return {"summary": self.summary(), "reports": [r.to_json(timings) for r in self.reports]}


def _verify_ring(args) -> list[VerificationReport]:
    spec, theorems, caps = args
    try:
        ctx = RingContext(spec, caps)
    except CapExceeded as exc:
        return [VerificationReport(t, spec, "skipped", note=str(exc)) for t in theorems]
    return [verify(t, spec, caps, context=ctx) for t in theorems]


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("CAYRING_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(families, theorem_ids: Sequence[str] | None = None, caps: Caps = Caps(),
              threads: int | None = None) -> SuiteResult:
    """Run checks over every ring of the families in enumeration order."""
    theorems = list(theorem_ids or THEOREM_IDS)
    for t in theorems:
        if t not in CHECKS:
            raise KeyError(f"unknown theorem id {t!r}")
    specs = family_specs(families) if not isinstance(families, (list, tuple)) or (
        families and not isinstance(families[0], str)) else list(families)
    threads = default_threads() if threads is None else threads
    jobs = [(s, theorems, caps) for s in specs]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_verify_ring, jobs))
    else:
        chunks = [_verify_ring(j) for j in jobs]
    return SuiteResult([r for chunk in chunks for r in chunk])
