"""The primal-dual solver and its certificate machinery.

Each iteration inspects the residual graph G^S.  A cheap even cycle
(at most two attachment nodes) gets its plain covering inequality raised
until a node goes tight.  Otherwise the residual graph is 2-compressed,
a minimal pocket H is extracted, a 2/3-quasi-perfect tiling of H is
built, and the blended inequalities of all tiles are raised together
until either a node goes tight or a handle pair equalizes its minimum
residuals; equalization rebuilds the changed inequalities (fresh dual
variables, the raised ones keep their values) and the iteration
continues.  Tight nodes join S; handle pairs that went tight on both
sides register node pairs, which reverse-delete keeps or drops jointly.

All arithmetic is exact (fractions).  Every solve emits a dual
certificate: the raised inequalities lower-bound the LP optimum, and
cost(S') <= 47/7 * sum(y) is asserted on every run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .compression import (CompressionStack, CyclePreimage, CycleSeg, Piece,
                          compress, cycle_preimage,
                          find_low_attachment_even_cycle)
from .errors import (DesignationFlip, EctError, InfeasibleInput,
                     NonTermination, ZeroRateDeadlock)
from .graph import (EVEN, TWIN, Graph, combine_parity, has_even_cycle,
                    is_feasible_ect, residual_graph)
from .instance import Instance
from .pockets import Pocket, Tiling, find_minimal_pocket, quasi_perfect_tiling

RATIO_BOUND = Fraction(47, 7)

HALF = Fraction(1, 2)
ONE = Fraction(1)


# -- inequalities ------------------------------------------------------------


@dataclass
class HandlePairRef:
    cycle_key: frozenset[int]
    h1: tuple[int, ...]      # interior node ids
    h2: tuple[int, ...]


@dataclass
class Inequality:
    idx: int
    kind: str                         # "cycle" or "blended"
    coeffs: dict[int, Fraction]       # support only (coefficient > 0)
    y: Fraction = Fraction(0)
    handle_pairs: list[HandlePairRef] = field(default_factory=list)
    special: frozenset[int] | None = None
    note: str = ""

    def support(self) -> list[int]:
        return sorted(self.coeffs)


@dataclass
class BlendedInequality(Inequality):
    pass


def _min_residual(residual: dict[int, Fraction], nodes) -> Fraction | None:
    vals = [residual[v] for v in nodes]
    return min(vals) if vals else None


def blended_coefficients(preimage: CyclePreimage,
                         residual: dict[int, Fraction],
                         designations: dict[frozenset[int], frozenset[int]],
                         idx: int = -1) -> Inequality:
    """Coefficient map of the blended inequality for a G2 cycle.

    Path interiors, piece ends and branch nodes get 1.  Per elementary
    cycle the handle with strictly larger minimum interior residual is
    dominant (1 vs 0, the designation is recorded and may never flip);
    equal minima give 1/2 on both.  If every elementary cycle is strict
    and the all-dominant support cycle is odd, the lowest elementary
    cycle becomes special with 1 on both handles.
    """
    coeffs: dict[int, Fraction] = {}
    for v in preimage.g2_nodes:
        coeffs[v] = ONE
    handle_pairs: list[HandlePairRef] = []
    strict_choice: list[tuple[CycleSeg, int]] = []   # (segment, dominant index)
    all_strict = True
    elementary: list[CycleSeg] = []
    for piece in preimage.pieces:
        for seg in piece.segments:
            if isinstance(seg, CycleSeg):
                elementary.append(seg)
                coeffs[seg.enter] = ONE
                coeffs[seg.exit] = ONE
                m1 = _min_residual(residual, seg.handles[0].interior)
                m2 = _min_residual(residual, seg.handles[1].interior)
                key = seg.cycle_key()
                if m1 is None and m2 is None:
                    all_strict = False
                elif m1 == m2:
                    for v in seg.handles[0].interior:
                        coeffs[v] = HALF
                    for v in seg.handles[1].interior:
                        coeffs[v] = HALF
                    all_strict = False
                else:
                    dom = 0 if (m2 is None or (m1 is not None and m1 > m2)) else 1
                    dom_key = seg.handle_key(dom)
                    prev = designations.get(key)
                    if prev is not None and prev != dom_key:
                        raise DesignationFlip(
                            f"dominant handle of elementary cycle "
                            f"{sorted(key)} flipped")
                    designations[key] = dom_key
                    for v in seg.handles[dom].interior:
                        coeffs[v] = ONE
                    strict_choice.append((seg, dom))
                handle_pairs.append(HandlePairRef(
                    key, tuple(seg.handles[0].interior),
                    tuple(seg.handles[1].interior)))
            else:
                for v in seg.nodes[1:-1]:
                    coeffs[v] = ONE

    special = None
    if all_strict and elementary:
        parity = 0
        flexible = False
        for piece in preimage.pieces:
            for seg in piece.segments:
                if isinstance(seg, CycleSeg):
                    dom = next(d for s, d in strict_choice if s is seg)
                    p = seg.handles[dom].parity
                else:
                    p = seg.parity
                if p == TWIN:
                    flexible = True
                else:
                    parity ^= p
        if not flexible and parity == 1:
            seg = elementary[0]
            special = seg.cycle_key()
            for v in seg.handles[0].interior:
                coeffs[v] = ONE
            for v in seg.handles[1].interior:
                coeffs[v] = ONE
    return Inequality(idx, "blended", coeffs, Fraction(0), handle_pairs,
                      special)


# -- increments --------------------------------------------------------------


@dataclass
class IncrementResult:
    eps: Fraction
    tight: list[int]
    equalized: list[frozenset[int]]  # cycle keys whose handle pair equalized


def increment_step(residual: dict[int, Fraction],
                   active: list[Inequality]) -> IncrementResult:
    """Raise all active dual variables by the largest uniform epsilon."""
    rates: dict[int, Fraction] = {}
    for ineq in active:
        for v, a in ineq.coeffs.items():
            rates[v] = rates.get(v, Fraction(0)) + a
    positive = {v: r for v, r in rates.items() if r > 0}
    if not positive:
        raise ZeroRateDeadlock("no node has a positive dual rate")

    eps_tight = min(residual[v] / r for v, r in positive.items())

    # handle-pair equalization: first time two unequal min-residual
    # trajectories meet, scanning line crossings and breakpoints
    pairs: dict[frozenset[int], HandlePairRef] = {}
    for ineq in active:
        for hp in ineq.handle_pairs:
            pairs.setdefault(hp.cycle_key, hp)

    def traj(v: int) -> tuple[Fraction, Fraction]:
        return residual[v], rates.get(v, Fraction(0))

    def min_at(nodes, t: Fraction) -> Fraction | None:
        vals = [residual[v] - rates.get(v, Fraction(0)) * t for v in nodes]
        return min(vals) if vals else None

    eps_handle: Fraction | None = None
    equal_at: dict[Fraction, list[frozenset[int]]] = {}
    for key in sorted(pairs, key=sorted):
        hp = pairs[key]
        if not hp.h1 or not hp.h2:
            continue
        m1 = min_at(hp.h1, Fraction(0))
        m2 = min_at(hp.h2, Fraction(0))
        if m1 == m2:
            continue
        candidates: set[Fraction] = set()
        lines1 = [traj(v) for v in hp.h1]
        lines2 = [traj(v) for v in hp.h2]
        for r1, q1 in lines1:
            for r2, q2 in lines2:
                if q1 != q2:
                    t = (r1 - r2) / (q1 - q2)
                    if t > 0:
                        candidates.add(t)
        for lines in (lines1, lines2):
            for i, (r1, q1) in enumerate(lines):
                for r2, q2 in lines[i + 1:]:
                    if q1 != q2:
                        t = (r1 - r2) / (q1 - q2)
                        if t > 0:
                            candidates.add(t)
        valid = [t for t in sorted(candidates)
                 if min_at(hp.h1, t) == min_at(hp.h2, t)]
        if valid:
            t0 = valid[0]
            if eps_handle is None or t0 < eps_handle:
                eps_handle = t0
            equal_at.setdefault(t0, []).append(key)

    eps = eps_tight if eps_handle is None else min(eps_tight, eps_handle)
    for ineq in active:
        ineq.y += eps
    for v, r in positive.items():
        residual[v] -= r * eps
        assert residual[v] >= 0, "dual feasibility violated"
    tight = sorted(v for v, r in positive.items() if residual[v] == 0)
    equalized = sorted(equal_at.get(eps, []), key=sorted)
    return IncrementResult(eps, tight, equalized)


# -- iteration records / report ----------------------------------------------


@dataclass
class IterationRecord:
    index: int
    branch: str                       # "cheap-cycle" or "tiling"
    residual_nodes: int
    pocket_nodes: int = 0
    tiles: int = 0
    beta: Fraction | None = None
    psi: Fraction | None = None
    certificate: Fraction | None = None
    epsilons: list[Fraction] = field(default_factory=list)
    tight: list[int] = field(default_factory=list)
    pairs: list[tuple[int, int]] = field(default_factory=list)
    inequality_ids: list[int] = field(default_factory=list)
    equalizations: int = 0


@dataclass
class SolveReport:
    hitting_set: list[int]
    cost: Fraction
    dual_objective: Fraction
    ratio_bound: Fraction
    iterations: list[IterationRecord]
    inequalities: list[Inequality]
    addition_order: list[int]
    pairs: list[tuple[int, int]]
    big_cost_hit: bool
    tilings: list[Tiling] = field(default_factory=list)
    stacks: list[CompressionStack] = field(default_factory=list)
    incremented_pieces: list[list[Piece]] = field(default_factory=list)


# -- reverse delete ----------------------------------------------------------


def reverse_delete(g: Graph, order: list[int],
                   pairs: list[tuple[int, int]]) -> list[int]:
    """Pair-aware reverse delete; pairs leave or stay together."""
    s = set(order)
    if not is_feasible_ect(g, s):
        raise InfeasibleInput("reverse delete needs a feasible starting set")
    partner: dict[int, int] = {}
    for a, b in pairs:
        partner[a] = b
        partner[b] = a
    for w in reversed(order):
        if w not in s:
            continue
        if w not in partner:
            if is_feasible_ect(g, s - {w}):
                s.remove(w)
        else:
            other = partner[w]
            assert other in s, "pair members must leave jointly"
            if is_feasible_ect(g, s - {w, other}):
                s.remove(w)
                s.remove(other)
    return sorted(s)


# -- the solver ---------------------------------------------------------------


def run_primal_dual(inst: Instance, max_iters: int | None = None,
                    keep_stacks: bool = True) -> SolveReport:
    g = inst.graph
    emb = inst.embedding()
    residual = {v: Fraction(g.cost[v]) for v in g.nodes()}
    order: list[int] = []
    pairs: list[tuple[int, int]] = []
    inequalities: list[Inequality] = []
    designations: dict[frozenset[int], frozenset[int]] = {}
    records: list[IterationRecord] = []
    tilings: list[Tiling] = []
    stacks: list[CompressionStack] = []
    incremented_pieces: list[list[Piece]] = []
    total_handle_pairs = 0
    equalization_budget_used = 0

    def guard() -> int:
        limit = max(1, g.num_nodes()) * (1 + total_handle_pairs) + 10
        if max_iters is not None:
            limit = min(limit, max_iters)
        return limit

    while True:
        if len(records) > guard():
            raise NonTermination(
                f"iteration limit {guard()} exceeded; trace: "
                f"{[r.branch for r in records[-5:]]}")
        res = residual_graph(g, set(order))
        if not has_even_cycle(res):
            break
        rec = IterationRecord(len(records), "", res.num_nodes())
        cheap = find_low_attachment_even_cycle(res)
        new_tight: list[int] = []
        if cheap is not None:
            rec.branch = "cheap-cycle"
            nodes, _ = cheap
            ineq = Inequality(len(inequalities), "cycle",
                              {v: ONE for v in nodes})
            inequalities.append(ineq)
            rec.inequality_ids.append(ineq.idx)
            step = increment_step(residual, [ineq])
            rec.epsilons.append(step.eps)
            new_tight = step.tight
            iter_pairs: list[tuple[int, int]] = []
        else:
            rec.branch = "tiling"
            stack = compress(res, emb.restricted(res.nodes()))
            pocket = find_minimal_pocket(stack.g2, stack.g2_embedding)
            tiling = quasi_perfect_tiling(pocket)
            tilings.append(tiling)
            if keep_stacks:
                stacks.append(stack)
            rec.pocket_nodes = pocket.graph.num_nodes()
            rec.tiles = len(tiling.tiles)
            rec.beta, rec.psi = tiling.beta, tiling.psi
            rec.certificate = tiling.certificate()

            preimages = [cycle_preimage(stack.pieces, stack.g2, t.cycle_edges)
                         for t in tiling.tiles]
            seen_keys = {seg.cycle_key()
                         for pre in preimages for p in pre.pieces
                         for seg in p.segments if isinstance(seg, CycleSeg)}
            total_handle_pairs += len(seen_keys)
            active = []
            for pre in preimages:
                ineq = blended_coefficients(pre, residual, designations,
                                            len(inequalities))
                inequalities.append(ineq)
                rec.inequality_ids.append(ineq.idx)
                active.append(ineq)
            if keep_stacks:
                by_edge = {p.g2_edge: p for pre in preimages
                           for p in pre.pieces}
                incremented_pieces.append(
                    [by_edge[k] for k in sorted(by_edge)])
            while True:
                step = increment_step(residual, active)
                rec.epsilons.append(step.eps)
                if step.tight:
                    new_tight = step.tight
                    break
                if not step.equalized:
                    raise NonTermination(
                        "increment produced neither tight nodes nor an "
                        "equalization")
                rec.equalizations += len(step.equalized)
                equalization_budget_used += len(step.equalized)
                if equalization_budget_used > 2 * total_handle_pairs + 10:
                    raise NonTermination("equalization events exceeded the "
                                         "handle-pair budget")
                # rebuild changed inequalities; raised ones keep their y
                new_active = []
                for pre, old in zip(preimages, active):
                    fresh = blended_coefficients(pre, residual, designations,
                                                 len(inequalities))
                    if fresh.coeffs == old.coeffs:
                        new_active.append(old)
                    else:
                        inequalities.append(fresh)
                        rec.inequality_ids.append(fresh.idx)
                        new_active.append(fresh)
                active = new_active

            # node pairs: a tight node inside each handle of a pair
            iter_pairs = []
            tight_set = set(new_tight)
            for pre in preimages:
                for piece in pre.pieces:
                    for seg in piece.segments:
                        if not isinstance(seg, CycleSeg):
                            continue
                        in1 = sorted(tight_set & set(seg.handles[0].interior))
                        in2 = sorted(tight_set & set(seg.handles[1].interior))
                        if in1 and in2:
                            pair = (in1[0], in2[0])
                            if pair not in iter_pairs:
                                iter_pairs.append(pair)

        paired_nodes = sorted({x for p in iter_pairs for x in p})
        batch = [v for v in paired_nodes] + \
                [v for v in new_tight if v not in paired_nodes]
        rec.tight = list(batch)
        rec.pairs = list(iter_pairs)
        pairs.extend(iter_pairs)
        order.extend(batch)
        records.append(rec)
        if not batch:
            raise NonTermination("iteration added no nodes")

    s_final = reverse_delete(g, order, pairs)
    cost = g.total_cost(s_final)
    dual = sum((iq.y for iq in inequalities), Fraction(0))
    if dual == 0:
        assert cost == 0 and not s_final
        ratio = Fraction(1)
    else:
        ratio = cost / dual
    report = SolveReport(
        hitting_set=s_final,
        cost=cost,
        dual_objective=dual,
        ratio_bound=ratio,
        iterations=records,
        inequalities=inequalities,
        addition_order=order,
        pairs=pairs,
        big_cost_hit=bool(set(s_final) & inst.big_cost_nodes()),
        tilings=tilings,
        stacks=stacks,
        incremented_pieces=incremented_pieces,
    )
    _post_assertions(inst, report)
    return report


def _post_assertions(inst: Instance, report: SolveReport) -> None:
    g = inst.graph
    s = set(report.hitting_set)
    if not is_feasible_ect(g, s):
        raise EctError("solver output is not a feasible transversal")
    if report.ratio_bound > RATIO_BOUND:
        raise EctError(
            f"approximation ratio {report.ratio_bound} exceeds 47/7")
    # minimality under the pair semantics
    partner = {}
    for a, b in report.pairs:
        partner[a] = b
        partner[b] = a
    for w in report.hitting_set:
        if w in partner and partner[w] in s:
            if is_feasible_ect(g, s - {w, partner[w]}):
                raise EctError(f"pair ({w},{partner[w]}) is removable")
        else:
            if is_feasible_ect(g, s - {w}):
                raise EctError(f"hit node {w} is removable")
    for plist in report.incremented_pieces:
        for piece in plist:
            piece_case(piece, s)
    if report.stacks:
        for eid in sorted(report.stacks[-1].pieces):
            piece_case(report.stacks[-1].pieces[eid], s)


def piece_case(piece: Piece, s: set[int]) -> int:
    """Which of the four minimal-solution piece cases holds (exactly one)."""
    interior = piece.interior_nodes()
    hit_interior = interior & s
    hit_ends = {piece.u, piece.v} & s
    cases = []
    if not hit_interior:
        cases.append(1)
    else:
        if hit_ends:
            raise EctError(
                f"piece {piece.g2_edge}: hit end {sorted(hit_ends)} together "
                f"with hit interior {sorted(hit_interior)}")
        cuts = piece.cut_interior_nodes()
        if len(hit_interior) == 1 and next(iter(hit_interior)) in cuts:
            cases.append(2)
        cycles = piece.elementary_cycles()
        if len(hit_interior) == 2:
            for seg in cycles:
                a = hit_interior & set(seg.handles[0].interior)
                b = hit_interior & set(seg.handles[1].interior)
                if len(a) == 1 and len(b) == 1:
                    cases.append(3)
                    break
        if cycles and len(hit_interior) == len(cycles):
            per_cycle = []
            for seg in cycles:
                inside = hit_interior & (set(seg.handles[0].interior)
                                         | set(seg.handles[1].interior))
                per_cycle.append(len(inside))
            if all(c == 1 for c in per_cycle):
                cases.append(4)
    if len(cases) != 1:
        raise EctError(
            f"piece {piece.g2_edge} matches cases {cases} "
            f"(hit interior {sorted(hit_interior)}, ends {sorted(hit_ends)})")
    return cases[0]


# -- certificate verification --------------------------------------------------


def verify_certificate(inst: Instance, report: SolveReport,
                       check_exact: bool = True) -> tuple[bool, list[str]]:
    """Re-check dual feasibility, primal feasibility and the ratio bound."""
    from .oracle import exact_ect, oracle_node_limit

    g = inst.graph
    reasons: list[str] = []
    residual = {v: Fraction(g.cost[v]) for v in g.nodes()}
    dual = Fraction(0)
    for iq in report.inequalities:
        if iq.y < 0:
            reasons.append(f"inequality {iq.idx} has negative y")
        dual += iq.y
        for v, a in iq.coeffs.items():
            if v not in residual:
                reasons.append(f"inequality {iq.idx} references unknown "
                               f"node {v}")
                continue
            residual[v] -= a * iq.y
    for v, r in residual.items():
        if r < 0:
            reasons.append(f"dual constraint of node {v} violated by {-r}")
    if dual != report.dual_objective:
        reasons.append(f"dual objective mismatch: {dual} != "
                       f"{report.dual_objective}")
    s = set(report.hitting_set)
    if not is_feasible_ect(g, s):
        reasons.append("hitting set is not a feasible transversal")
    cost = g.total_cost(s)
    if cost != report.cost:
        reasons.append(f"cost mismatch: {cost} != {report.cost}")
    if dual > 0 and cost / dual != report.ratio_bound:
        reasons.append("ratio field does not match cost/dual")
    if cost > RATIO_BOUND * dual and not (cost == 0 and dual == 0):
        reasons.append(f"ratio {cost}/{dual} exceeds 47/7")
    if check_exact and g.num_nodes() <= min(18, oracle_node_limit()):
        opt_set, opt_cost = exact_ect(g)
        if dual > opt_cost:
            reasons.append(f"dual objective {dual} exceeds optimum "
                           f"{opt_cost}: an inequality is invalid")
        if cost > RATIO_BOUND * opt_cost:
            reasons.append("cost exceeds 47/7 times the exact optimum")
    return (not reasons), reasons
