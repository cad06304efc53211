"""Abstract economies: equilibrium verification, search, hypothesis checks.

An economy is a finite list of agents, each holding a choice box X_i, a
compact target set D_i inside it, and three piecewise maps from the
product domain X into X_i: a constraint map A, a preference map P, and
a second constraint map B. An equilibrium point x* puts every block
x*_i inside the graph adherence of B_i at x* while A_i(x*) and P_i(x*)
do not intersect.

The three hypothesis checkers each bundle one sufficient-condition set
for equilibrium existence. Each returns one CheckReport tree whose
children are per-agent, per-condition verdicts; openness of the
conflict region W_i = {x : A_i(x) cap P_i(x) != empty} is decided
symbolically from the piece partition, everything metric runs on the
supplied grid. Checkers never gate the search functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import io as _io
from .checks import (
    FAIL,
    PASS,
    CheckReport,
    Witness,
    check_dual_w_usc,
    check_e_uscs,
    check_usc,
    combine_reports,
)
from .intervals import Box, BoxSet, FlaggedInterval, Grid, box_closure, box_contains, box_is_all_closed
from .maps import (
    DomainError,
    PiecewiseMap,
    adherence,
    closure_values,
    intersect_maps,
    restrict,
    t_upper,
)


@dataclass(frozen=True, slots=True)
class AgentSpec:
    """One agent: choice box, compact target set, and the three maps."""

    x_box: Box
    d_set: BoxSet
    a_map: PiecewiseMap
    p_map: PiecewiseMap
    b_map: PiecewiseMap


@dataclass(frozen=True)
class AbstractEconomy:
    agents: tuple[AgentSpec, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.agents:
            raise ValueError("an economy needs at least one agent")
        domain = self.domain
        for i, ag in enumerate(self.agents):
            k = len(ag.x_box)
            if ag.d_set.dim != k:
                raise ValueError(f"agent {i}: target set dimension mismatch")
            if ag.d_set.is_empty:
                raise ValueError(f"agent {i}: target set is empty")
            if not ag.d_set.subset_within(BoxSet.single(ag.x_box), 0.0):
                raise ValueError(f"agent {i}: target set escapes the choice box")
            for name, m in (("a", ag.a_map), ("p", ag.p_map), ("b", ag.b_map)):
                if m.domain != domain:
                    raise ValueError(f"agent {i}: map {name} has a foreign domain")
                if m.codomain_dim != k:
                    raise ValueError(f"agent {i}: map {name} codomain mismatch")

    @property
    def domain(self) -> Box:
        return tuple(iv for ag in self.agents for iv in ag.x_box)

    @property
    def dim(self) -> int:
        return len(self.domain)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out = []
        at = 0
        for ag in self.agents:
            k = len(ag.x_box)
            out.append(tuple(range(at, at + k)))
            at += k
        return tuple(out)

    def _derived(self, key: str, build):
        hit = self._cache.get(key)
        if hit is None:
            hit = build()
            self._cache[key] = hit
        return hit

    def conflict_map(self, i: int) -> PiecewiseMap:
        """A_i cap P_i as a piecewise map."""
        return self._derived(f"h{i}", lambda: intersect_maps(
            self.agents[i].a_map, self.agents[i].p_map))

    def adherent_b(self, i: int) -> PiecewiseMap:
        return self._derived(f"bbar{i}", lambda: adherence(self.agents[i].b_map))

    def adherent_conflict(self, i: int) -> PiecewiseMap:
        return self._derived(f"hbar{i}", lambda: adherence(self.conflict_map(i)))

    def conflict_region(self, i: int) -> BoxSet:
        """W_i: the part of the domain where A_i and P_i intersect."""
        return self._derived(f"w{i}", lambda: self.conflict_map(i).nonempty_region())

    def domain_set(self) -> BoxSet:
        return BoxSet.single(self.domain)

    def to_doc(self) -> dict:
        return economy_to_doc(self)


def economy_to_doc(e: AbstractEconomy) -> dict:
    return {
        "kind": "economy",
        "agents": [
            {
                "x_box": _io.box_to_list(ag.x_box),
                "d": _io.boxset_to_doc(ag.d_set),
                "a": _io.map_to_doc(ag.a_map),
                "p": _io.map_to_doc(ag.p_map),
                "b": _io.map_to_doc(ag.b_map),
            }
            for ag in e.agents
        ],
    }


def economy_from_doc(doc: Any) -> AbstractEconomy:
    if not isinstance(doc, dict) or doc.get("kind") != "economy":
        raise _io.DocumentError("expected an 'economy' document")
    raw_agents = doc.get("agents")
    if not isinstance(raw_agents, list) or not raw_agents:
        raise _io.DocumentError("economy: 'agents' must be a nonempty list")
    agents = []
    for k, raw in enumerate(raw_agents):
        if not isinstance(raw, dict):
            raise _io.DocumentError(f"economy.agents[{k}]: expected an object")
        agents.append(AgentSpec(
            x_box=_io.box_from_list(raw.get("x_box"), f"agents[{k}].x_box"),
            d_set=_io.boxset_from_doc(raw.get("d")),
            a_map=_io.map_from_doc(raw.get("a")),
            p_map=_io.map_from_doc(raw.get("p")),
            b_map=_io.map_from_doc(raw.get("b")),
        ))
    try:
        return AbstractEconomy(tuple(agents))
    except ValueError as exc:
        raise _io.DocumentError(f"economy: {exc}") from exc


# ---------------------------------------------------------------------------
# Equilibrium verification and search
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class AgentEvidence:
    agent: int
    block_point: tuple[float, ...]
    in_adherent_b: bool
    b_piece: int
    b_value: BoxSet
    conflict_empty: bool
    conflict_value: BoxSet

    @property
    def ok(self) -> bool:
        return self.in_adherent_b and self.conflict_empty


@dataclass(frozen=True)
class EquilibriumCertificate:
    point: tuple[float, ...]
    evidence: tuple[AgentEvidence, ...]
    valid: bool
    tol: float = 0.0

    def to_doc(self) -> dict:
        return {
            "kind": "equilibrium-certificate",
            "point": list(self.point),
            "valid": self.valid,
            "tol": self.tol,
            "agents": [
                {
                    "agent": ev.agent,
                    "block_point": list(ev.block_point),
                    "in_adherent_b": ev.in_adherent_b,
                    "b_piece": ev.b_piece,
                    "b_value": _io.boxset_to_doc(ev.b_value),
                    "conflict_empty": ev.conflict_empty,
                    "conflict_value": _io.boxset_to_doc(ev.conflict_value),
                }
                for ev in self.evidence
            ],
        }


def verify_equilibrium(e: AbstractEconomy, x: Sequence[float]) -> EquilibriumCertificate:
    """Exact per-agent equilibrium clauses at a single point of X."""
    x = tuple(x)
    if not box_contains(e.domain, x):
        raise DomainError(f"point {x} outside the product choice box")
    evidence = []
    for i, blk in enumerate(e.blocks):
        xb = tuple(x[j] for j in blk)
        bbar = e.adherent_b(i)
        piece_idx, _ = bbar.piece_at(x)
        bval = bbar.evaluate(x)
        hval = e.conflict_map(i).evaluate(x)
        evidence.append(AgentEvidence(
            agent=i,
            block_point=xb,
            in_adherent_b=bval.contains(xb),
            b_piece=piece_idx,
            b_value=bval,
            conflict_empty=hval.is_empty,
            conflict_value=hval,
        ))
    return EquilibriumCertificate(x, tuple(evidence), all(ev.ok for ev in evidence))


def _check_grid_covers_targets(e: AbstractEconomy, grid: Grid) -> None:
    if grid.dim != e.dim:
        raise ValueError(f"grid dimension {grid.dim} != domain dimension {e.dim}")
    for i, (ag, blk) in enumerate(zip(e.agents, e.blocks)):
        bb = ag.d_set.bounding_box()
        for k, j in enumerate(blk):
            if grid.lo[j] > bb[k].lo or grid.hi[j] < bb[k].hi:
                raise ValueError(
                    f"grid does not cover agent {i}'s target set on coordinate {j}")


def search_equilibria(e: AbstractEconomy, grid: Grid) -> list[EquilibriumCertificate]:
    """Valid certificates at every grid point of X, lexicographic order."""
    _check_grid_covers_targets(e, grid)
    found = []
    for x in grid.points():
        if not box_contains(e.domain, x):
            continue
        cert = verify_equilibrium(e, x)
        if cert.valid:
            found.append(cert)
    return found


# ---------------------------------------------------------------------------
# Hypothesis checkers
# ---------------------------------------------------------------------------

def _convex(bs: BoxSet) -> bool:
    return len(bs.boxes) <= 1


def _grid_points(e: AbstractEconomy, grid: Grid):
    for x in grid.points():
        if box_contains(e.domain, x):
            yield x


def _sets_condition(e: AbstractEconomy, i: int, name: str,
                    require_compact_x: bool = False) -> CheckReport:
    """Shape of the choice box and the target set."""
    ag = e.agents[i]
    problems = []
    if require_compact_x and not box_is_all_closed(ag.x_box):
        problems.append("choice box is not all-closed")
    if not all(box_is_all_closed(b) for b in ag.d_set.boxes):
        problems.append("target set is not all-closed")
    if not _convex(ag.d_set):
        problems.append("target set is not a single box")
    wit = tuple(Witness((), None, 0.0, "structure", msg) for msg in problems)
    return CheckReport(name, PASS if not problems else FAIL, wit)


def _values_condition_4_1(e: AbstractEconomy, i: int, grid: Grid, name: str) -> CheckReport:
    """Convex A/P values, nonempty convex B values, conflict inside B."""
    ag = e.agents[i]
    h = e.conflict_map(i)
    wit = []
    for x in _grid_points(e, grid):
        aval = ag.a_map.evaluate(x)
        pval = ag.p_map.evaluate(x)
        bval = ag.b_map.evaluate(x)
        if not _convex(aval):
            wit.append(Witness(x, None, 0.0, "nonconvex", "constraint map value"))
        if not _convex(pval):
            wit.append(Witness(x, None, 0.0, "nonconvex", "preference map value"))
        if bval.is_empty or not _convex(bval):
            wit.append(Witness(x, None, 0.0, "bad value", "second constraint map value"))
        if not h.evaluate(x).subset_within(bval, 0.0):
            wit.append(Witness(x, None, 0.0, "inclusion", "conflict value escapes B"))
        if len(wit) >= 32:
            break
    return CheckReport(name, PASS if not wit else FAIL, tuple(wit[:32]),
                       {"points_checked": grid.point_count()})


def _openness_condition(e: AbstractEconomy, i: int, name: str) -> CheckReport:
    w = e.conflict_region(i)
    ok = w.is_empty or w.is_open_within(e.domain_set())
    wit = () if ok else (Witness((), None, 0.0, "not open",
                                 "conflict region touches its own relative boundary"),)
    return CheckReport(name, PASS if ok else FAIL, wit,
                       {"w_boxes": len(w.boxes)})


def _almost_w_usc_children(t: PiecewiseMap, d: BoxSet, eps_list: Sequence[float],
                           grid: Grid, delta: float | None, tol: float,
                           label: str, require_nonempty_convex: bool) -> list[CheckReport]:
    """USC of adherence(t_upper(...)) per eps, plus value-shape scans."""
    children = []
    for eps in eps_list:
        bar = adherence(t_upper(t, eps, d))
        children.append(check_usc(bar, grid, delta, tol,
                                  property_name=f"{label}.almost-w-usc@eps={eps:g}"))
        if require_nonempty_convex:
            wit = []
            for _, p in grid.indexed_points():
                if not box_contains(t.domain, p):
                    continue
                val = bar.evaluate(p)
                if val.is_empty:
                    wit.append(Witness(p, None, math.inf, "empty value"))
                elif not _convex(val):
                    wit.append(Witness(p, None, 0.0, "nonconvex"))
                if len(wit) >= 32:
                    break
            children.append(CheckReport(f"{label}.values@eps={eps:g}",
                                        PASS if not wit else FAIL, tuple(wit),
                                        {"eps": eps}))
    return children


def check_theorem_4_1_hypotheses(e: AbstractEconomy, eps_list: Sequence[float],
                                 grid: Grid, delta: float | None = None,
                                 tol: float = 1e-9) -> CheckReport:
    """Six structural conditions under which an equilibrium must exist.

    Per agent: (1) shape of the choice box and target set; (2) convex
    constraint/preference values, nonempty convex B values, and the
    conflict set inside B at every grid point; (3) symbolic relative
    openness of the conflict region; (4) USC surrogate of the adherent
    clipped dilation of A cap P on the conflict region, with nonempty
    convex values there; (5) the same for B over the whole domain;
    (6) no block point ever lies in the adherent conflict value.
    """
    agent_reports = []
    for i in range(len(e.agents)):
        ag = e.agents[i]
        conds = [
            _sets_condition(e, i, f"agent{i}.cond1-sets"),
            _values_condition_4_1(e, i, grid, f"agent{i}.cond2-values"),
            _openness_condition(e, i, f"agent{i}.cond3-open-conflict-region"),
        ]
        # (4): on the conflict region only; evaluated per region box
        w = e.conflict_region(i)
        c4_children = []
        for k, w_box in enumerate(w.boxes):
            h_w = restrict(e.conflict_map(i), w_box)
            c4_children.extend(_almost_w_usc_children(
                h_w, ag.d_set, eps_list, grid, delta, tol,
                f"agent{i}.conflict@W{k}", require_nonempty_convex=True))
        if not c4_children:
            c4_children.append(CheckReport(f"agent{i}.conflict-region-empty", PASS, (),
                                           {"informational": True},
                                           ("empty conflict region: vacuously true",)))
        conds.append(combine_reports(f"agent{i}.cond4-conflict-almost-w-usc", c4_children))
        conds.append(combine_reports(
            f"agent{i}.cond5-b-almost-w-usc",
            _almost_w_usc_children(ag.b_map, ag.d_set, eps_list, grid, delta, tol,
                                   f"agent{i}.b", require_nonempty_convex=True)))
        # (6): block point never in the adherent conflict value
        hbar = e.adherent_conflict(i)
        blk = e.blocks[i]
        wit = []
        for x in _grid_points(e, grid):
            xb = tuple(x[j] for j in blk)
            if hbar.evaluate(x).contains(xb):
                wit.append(Witness(x, None, 0.0, "reflexive",
                                   "block point inside adherent conflict value"))
                if len(wit) >= 32:
                    break
        conds.append(CheckReport(f"agent{i}.cond6-irreflexive",
                                 PASS if not wit else FAIL, tuple(wit)))
        agent_reports.append(combine_reports(f"agent{i}", conds))
    return combine_reports(
        "hypotheses-4.1", agent_reports,
        {"eps_list": list(eps_list), "grid_step": grid.step, "delta": delta, "tol": tol})


def check_theorem_4_2_hypotheses(e: AbstractEconomy, eps_list: Sequence[float],
                                 grid: Grid, delta: float | None = None,
                                 tol: float = 1e-9) -> CheckReport:
    """Conditions of the dual variant.

    Differences from the first checker: preference values must sit in
    the target set; the pair (A, P) restricted to the closed conflict
    region must pass the dual USC surrogate; the dilated-A-cap-P map
    (A+V) cap D cap P and the clipped dilation of B must have nonempty
    convex adherent values; and irreflexivity moves to the adherent
    preference map.
    """
    agent_reports = []
    for i in range(len(e.agents)):
        ag = e.agents[i]
        conds = [_sets_condition(e, i, f"agent{i}.cond1-sets")]

        h = e.conflict_map(i)
        wit = []
        for x in _grid_points(e, grid):
            pval = ag.p_map.evaluate(x)
            bval = ag.b_map.evaluate(x)
            if not pval.subset_within(ag.d_set, 0.0):
                wit.append(Witness(x, None, 0.0, "inclusion",
                                   "preference value escapes target set"))
            if bval.is_empty:
                wit.append(Witness(x, None, math.inf, "empty value", "B empty"))
            if not h.evaluate(x).subset_within(bval, 0.0):
                wit.append(Witness(x, None, 0.0, "inclusion", "conflict value escapes B"))
            if len(wit) >= 32:
                break
        conds.append(CheckReport(f"agent{i}.cond2-values", PASS if not wit else FAIL,
                                 tuple(wit[:32])))

        conds.append(_openness_condition(e, i, f"agent{i}.cond3-open-conflict-region"))

        # (4): dual property of (A,P) on the closed conflict region; B as before
        w = e.conflict_region(i)
        c4_children = []
        for k, w_box in enumerate(w.boxes):
            cl_box = box_closure(w_box)
            a_r = restrict(ag.a_map, cl_box)
            p_r = restrict(ag.p_map, cl_box)
            dual = check_dual_w_usc(a_r, p_r, ag.d_set, eps_list, grid, delta, tol)
            c4_children.append(CheckReport(f"agent{i}.dual@clW{k}", dual.verdict,
                                           dual.witnesses, dual.parameters, dual.notes,
                                           dual.children))
        if not c4_children:
            c4_children.append(CheckReport(f"agent{i}.conflict-region-empty", PASS, (),
                                           {"informational": True},
                                           ("empty conflict region: vacuously true",)))
        c4_children.extend(_almost_w_usc_children(
            ag.b_map, ag.d_set, eps_list, grid, delta, tol,
            f"agent{i}.b", require_nonempty_convex=False))
        conds.append(combine_reports(f"agent{i}.cond4-dual-and-b", c4_children))

        # (5): nonempty convex adherent values of (A+V) cap D cap P and of B^V
        c5_children = []
        for eps in eps_list:
            t_iv = intersect_maps(t_upper(ag.a_map, eps, ag.d_set), ag.p_map)
            pairs = ((f"agent{i}.t-iv", adherence(t_iv)),
                     (f"agent{i}.b-v", adherence(t_upper(ag.b_map, eps, ag.d_set))))
            for label, bar in pairs:
                wit = []
                for x in _grid_points(e, grid):
                    val = bar.evaluate(x)
                    if val.is_empty:
                        wit.append(Witness(x, None, math.inf, "empty value"))
                    elif not _convex(val):
                        wit.append(Witness(x, None, 0.0, "nonconvex"))
                    if len(wit) >= 32:
                        break
                c5_children.append(CheckReport(f"{label}@eps={eps:g}",
                                               PASS if not wit else FAIL, tuple(wit),
                                               {"eps": eps}))
        conds.append(combine_reports(f"agent{i}.cond5-approx-values", c5_children))

        # (6): block point never in the adherent preference value
        pbar = adherence(ag.p_map)
        blk = e.blocks[i]
        wit = []
        for x in _grid_points(e, grid):
            xb = tuple(x[j] for j in blk)
            if pbar.evaluate(x).contains(xb):
                wit.append(Witness(x, None, 0.0, "reflexive",
                                   "block point inside adherent preference value"))
                if len(wit) >= 32:
                    break
        conds.append(CheckReport(f"agent{i}.cond6-irreflexive",
                                 PASS if not wit else FAIL, tuple(wit)))
        agent_reports.append(combine_reports(f"agent{i}", conds))
    return combine_reports(
        "hypotheses-4.2", agent_reports,
        {"eps_list": list(eps_list), "grid_step": grid.step, "delta": delta, "tol": tol})


def check_theorem_4_3_hypotheses(e: AbstractEconomy, eps_list: Sequence[float],
                                 candidates: Sequence[PiecewiseMap | None] | None,
                                 grid: Grid, delta: float | None = None,
                                 tol: float = 1e-9) -> CheckReport:
    """Selection-based conditions: compact choice boxes, USC closed B,
    open conflict region, and an upper semicontinuous convex selection
    inside each dilated closed conflict value that avoids the base point.

    ``candidates`` supplies one selection map per agent (None entries
    fall back to the constant-selection heuristic); a missing selection
    yields the verdict "unverified" rather than "fail".
    """
    if candidates is None:
        candidates = [None] * len(e.agents)
    if len(candidates) != len(e.agents):
        raise ValueError("one candidate entry per agent required (None allowed)")
    agent_reports = []
    for i in range(len(e.agents)):
        ag = e.agents[i]
        conds = [_sets_condition(e, i, f"agent{i}.cond1-sets", require_compact_x=True)]

        b_closed = closure_values(ag.b_map)
        c2_children = [check_usc(b_closed, grid, delta, tol,
                                 property_name=f"agent{i}.cl-b-usc")]
        wit = []
        for x in _grid_points(e, grid):
            val = b_closed.evaluate(x)
            if val.is_empty:
                wit.append(Witness(x, None, math.inf, "empty value"))
            elif not _convex(val):
                wit.append(Witness(x, None, 0.0, "nonconvex"))
            if len(wit) >= 32:
                break
        c2_children.append(CheckReport(f"agent{i}.cl-b-values",
                                       PASS if not wit else FAIL, tuple(wit)))
        conds.append(combine_reports(f"agent{i}.cond2-cl-b", c2_children))

        conds.append(_openness_condition(e, i, f"agent{i}.cond3-open-conflict-region"))

        h_closed = closure_values(e.conflict_map(i))
        w = e.conflict_region(i)
        c4_children = []
        for eps in eps_list:
            for k, w_box in enumerate(w.boxes):
                rep = check_e_uscs(h_closed, w_box, candidates[i], eps, grid,
                                   delta, tol, block=e.blocks[i])
                c4_children.append(CheckReport(
                    f"agent{i}.e-uscs@W{k}@eps={eps:g}", rep.verdict, rep.witnesses,
                    rep.parameters, rep.notes, rep.children))
        if not c4_children:
            c4_children.append(CheckReport(f"agent{i}.conflict-region-empty", PASS, (),
                                           {"informational": True},
                                           ("empty conflict region: vacuously true",)))
        conds.append(combine_reports(f"agent{i}.cond4-e-uscs", c4_children))
        agent_reports.append(combine_reports(f"agent{i}", conds))
    return combine_reports(
        "hypotheses-4.3", agent_reports,
        {"eps_list": list(eps_list), "grid_step": grid.step, "delta": delta, "tol": tol})
