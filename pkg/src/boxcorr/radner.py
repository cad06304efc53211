"""Exchange economies with asymmetric information over future states.

Commodity space layout: one period-0 scalar coordinate followed by one
block of ``n_goods`` coordinates per state, so bundles live in
``R_+^{goods*states + 1}``. Prices use the same layout, normalized to
the unit simplex. An agent's signal classifies states at each price;
consumption must be equal across states the signal cannot distinguish.

Budget and information sets are polytopes and subspaces, not box
unions, so the associated (n+1)-agent economy carries them as exact
linear predicates; boxes appear only as over-approximations handed to
grid enumeration. Emptiness of "cheaper affordable preferred bundle"
sets is decided exactly by minimizing the price form over each value
box with the measurability classes collapsed (all coefficients are
nonnegative, so the minimum sits at the collapsed lower corner).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from . import io as _io
from .checks import FAIL, PASS, CheckReport, Witness, combine_reports
from .intervals import Box, BoxSet, FlaggedInterval
from .maps import PiecewiseMap

SIGNAL_PRESETS = ("pooled", "revealing")


def _signal_label(name: str, p: tuple[float, ...], state: int) -> int:
    """Resolve a signal preset at a price. Thresholds model price learning."""
    if name == "pooled":
        return 0
    if name == "revealing":
        return state
    if name.startswith("threshold:"):
        _, coord, cut = name.split(":")
        return state if p[int(coord)] > float(cut) else 0
    raise ValueError(f"unknown signal preset {name!r}")


@dataclass(frozen=True)
class InfoEconomy:
    """Agents, states, goods, endowments, signals, and preference maps.

    ``preferences[i]`` maps the full allocation (all agents' bundles,
    concatenated) to a set of bundles the agent strictly prefers;
    ``signals[i]`` is a preset name understood by ``_signal_label``.
    """

    n_agents: int
    n_goods: int
    n_states: int
    endowments: tuple[tuple[float, ...], ...]
    signals: tuple[str, ...]
    preferences: tuple[PiecewiseMap, ...]
    truncation: float | None = None

    def __post_init__(self) -> None:
        if min(self.n_agents, self.n_goods, self.n_states) < 1:
            raise ValueError("need at least one agent, good, and state")
        d = self.bundle_dim
        if len(self.endowments) != self.n_agents or len(self.signals) != self.n_agents \
                or len(self.preferences) != self.n_agents:
            raise ValueError("per-agent field lengths must equal n_agents")
        for i, e in enumerate(self.endowments):
            if len(e) != d:
                raise ValueError(f"endowment {i}: expected dim {d}")
            if any(c < 0 for c in e):
                raise ValueError(f"endowment {i}: negative component")
        for i, q in enumerate(self.preferences):
            if len(q.domain) != self.n_agents * d or q.codomain_dim != d:
                raise ValueError(f"preference map {i}: dimension mismatch")
        for name in self.signals:
            _signal_label(name, (0.0,) * d, 0)

    @property
    def bundle_dim(self) -> int:
        return self.n_goods * self.n_states + 1

    @property
    def aggregate_endowment(self) -> tuple[float, ...]:
        return tuple(sum(e[k] for e in self.endowments) for k in range(self.bundle_dim))

    def default_truncation(self) -> float:
        if self.truncation is not None:
            return self.truncation
        return 2.0 * max(self.aggregate_endowment)

    def state_coords(self, state: int) -> tuple[int, ...]:
        base = 1 + state * self.n_goods
        return tuple(range(base, base + self.n_goods))

    def signal_classes(self, i: int, p: tuple[float, ...]) -> tuple[tuple[int, ...], ...]:
        """Partition of states by indistinguishability at price p."""
        groups: dict[int, list[int]] = {}
        for s in range(self.n_states):
            groups.setdefault(_signal_label(self.signals[i], p, s), []).append(s)
        return tuple(tuple(g) for _, g in sorted(groups.items()))


@dataclass(frozen=True)
class PriceSimplex:
    """The unit price simplex sampled at a rational resolution."""

    dim: int
    resolution: int

    def __post_init__(self) -> None:
        if self.dim < 1 or self.resolution < 1:
            raise ValueError("dim and resolution must be positive")

    def points(self) -> Iterable[tuple[float, ...]]:
        n, k = self.resolution, self.dim
        for cuts in itertools.combinations(range(n + k - 1), k - 1):
            parts = []
            prev = -1
            for c in cuts + (n + k - 1,):
                parts.append(c - prev - 1)
                prev = c
            yield tuple(part / n for part in parts)

    def point_count(self) -> int:
        return math.comb(self.resolution + self.dim - 1, self.dim - 1)

    def vertices(self) -> Iterable[tuple[float, ...]]:
        for j in range(self.dim):
            yield tuple(1.0 if k == j else 0.0 for k in range(self.dim))


# ---------------------------------------------------------------------------
# Primitive sets
# ---------------------------------------------------------------------------

def _dot(a: Sequence[float], b: Sequence[float]) -> float:
    return sum(x * y for x, y in zip(a, b))


def budget_set(e: InfoEconomy, i: int, p: tuple[float, ...],
               truncation: float | None = None) -> "BudgetSet":
    m = e.default_truncation() if truncation is None else truncation
    if m < max(e.aggregate_endowment):
        raise ValueError("truncation too small")
    return BudgetSet(p, _dot(p, e.endowments[i]), m, e.bundle_dim)


@dataclass(frozen=True)
class BudgetSet:
    """Strictly affordable truncated bundles {x in [0,M]^d : px < pe}."""

    p: tuple[float, ...]
    wealth: float
    truncation: float
    dim: int

    def contains(self, x: Sequence[float]) -> bool:
        if len(x) != self.dim:
            raise ValueError("bundle dimension mismatch")
        if any(c < 0 or c > self.truncation for c in x):
            return False
        return _dot(self.p, x) < self.wealth

    def closure_contains(self, x: Sequence[float]) -> bool:
        """Membership in the closure; empty when no bundle is affordable."""
        if self.is_empty:
            return False
        if any(c < 0 or c > self.truncation for c in x):
            return False
        return _dot(self.p, x) <= self.wealth

    @property
    def is_empty(self) -> bool:
        # x = 0 is feasible iff 0 < wealth
        return not self.wealth > 0

    def boxset(self) -> BoxSet:
        """Bounding-box over-approximation; exactness lives in contains()."""
        if self.is_empty:
            return BoxSet.of(self.dim, [])
        ivs = []
        for j in range(self.dim):
            if self.p[j] > 0 and self.wealth / self.p[j] <= self.truncation:
                ivs.append(FlaggedInterval(0.0, self.wealth / self.p[j], True, False))
            else:
                ivs.append(FlaggedInterval.closed(0.0, self.truncation))
        return BoxSet.of(self.dim, [tuple(ivs)])


def information_set(e: InfoEconomy, i: int, p: tuple[float, ...],
                    truncation: float | None = None) -> "InformationSet":
    m = e.default_truncation() if truncation is None else truncation
    return InformationSet(e.signal_classes(i, p), e.n_goods, m, e.bundle_dim)


@dataclass(frozen=True)
class InformationSet:
    """Bundles measurable w.r.t. a signal: equal across pooled states."""

    classes: tuple[tuple[int, ...], ...]
    n_goods: int
    truncation: float
    dim: int

    def _class_coords(self, cls: tuple[int, ...], good: int) -> tuple[int, ...]:
        return tuple(1 + s * self.n_goods + good for s in cls)

    def contains(self, x: Sequence[float], tol_eq: float = 0.0) -> bool:
        if len(x) != self.dim:
            raise ValueError("bundle dimension mismatch")
        for cls in self.classes:
            for g in range(self.n_goods):
                coords = self._class_coords(cls, g)
                vals = [x[c] for c in coords]
                if max(vals) - min(vals) > tol_eq:
                    return False
        return True

    def boxset(self) -> BoxSet:
        box = tuple(FlaggedInterval.closed(0.0, self.truncation) for _ in range(self.dim))
        return BoxSet.of(self.dim, [box])


def delivery_set(e: InfoEconomy, i: int, x: Sequence[float] | None,
                 p: tuple[float, ...]):
    """Within-class delivery consistency on state-contingent plans.

    Plans y live in R^{goods*states} (no period-0 coordinate); for states
    s, s' carrying the same signal the state-s value of y(s) may not
    exceed the state-s value of y(s'). The allocation argument is part of
    the correspondence's signature but the inequalities constrain only
    the plan, so it may be None.
    """
    classes = e.signal_classes(i, p)
    l = e.n_goods

    def state_price(s: int) -> tuple[float, ...]:
        return tuple(p[1 + s * l + g] for g in range(l))

    def state_plan(y: Sequence[float], s: int) -> tuple[float, ...]:
        return tuple(y[s * l + g] for g in range(l))

    def ok(y: Sequence[float]) -> bool:
        if len(y) != l * e.n_states:
            raise ValueError("plan dimension mismatch")
        for cls in classes:
            for s in cls:
                ps = state_price(s)
                own = _dot(ps, state_plan(y, s))
                for s2 in cls:
                    if own > _dot(ps, state_plan(y, s2)):
                        return False
        return True

    return ok


# ---------------------------------------------------------------------------
# The associated abstract economy
# ---------------------------------------------------------------------------

def _collapsed_min(box: Box, p: tuple[float, ...],
                   classes: tuple[tuple[int, ...], ...], n_goods: int) -> float | None:
    """Exact min of p over a value box intersected with the measurability
    subspace, or None when that intersection is empty.

    Collapsing every class/good coordinate group to one variable turns the
    constrained minimum into a lower-corner evaluation: each group's range
    is the flagged intersection of its interval factors and its price
    coefficient is the (nonnegative) sum of the group's price entries.
    """
    total = box[0].lo * p[0]
    for cls in classes:
        for g in range(n_goods):
            coords = [1 + s * n_goods + g for s in cls]
            iv = box[coords[0]]
            for c in coords[1:]:
                iv = iv.intersect(box[c])
                if iv is None:
                    return None
            total += iv.lo * sum(p[c] for c in coords)
    return total


@dataclass(frozen=True)
class AgentClauses:
    agent: int
    in_closed_budget_info: bool
    in_closed_budget_and_closed_info: bool
    conflict_empty: bool

    @property
    def ok(self) -> bool:
        return self.in_closed_budget_info and self.conflict_empty


@dataclass(frozen=True)
class AssociatedCertificate:
    allocation: tuple[tuple[float, ...], ...]
    price: tuple[float, ...]
    agents: tuple[AgentClauses, ...]
    price_in_simplex: bool
    price_conflict_empty: bool
    valid: bool

    def to_doc(self) -> dict:
        return {
            "kind": "associated-certificate",
            "allocation": [list(b) for b in self.allocation],
            "price": list(self.price),
            "valid": self.valid,
            "agents": [
                {
                    "agent": a.agent,
                    "in_closed_budget_info": a.in_closed_budget_info,
                    "in_closed_budget_and_closed_info": a.in_closed_budget_and_closed_info,
                    "conflict_empty": a.conflict_empty,
                }
                for a in self.agents
            ],
            "price_in_simplex": self.price_in_simplex,
            "price_conflict_empty": self.price_conflict_empty,
        }


@dataclass(frozen=True)
class AssociatedEconomy:
    """The n+1 agent game induced by an information economy.

    Agents 0..n-1 choose bundles: constraint set = strict budget,
    preference = preferred cap measurable, second constraint = budget
    cap measurable. Agent n is the price player on the simplex, who
    prefers prices raising the value of aggregate excess demand.
    Everything is predicate-backed; boxes are over-approximations.
    """

    info: InfoEconomy
    truncation: float
    simplex: PriceSimplex

    def __post_init__(self) -> None:
        if self.truncation < max(self.info.aggregate_endowment):
            raise ValueError("truncation too small")
        if self.simplex.dim != self.info.bundle_dim:
            raise ValueError("price dimension must equal the bundle dimension")

    @property
    def n(self) -> int:
        return self.info.n_agents

    def budget(self, i: int, p: tuple[float, ...]) -> BudgetSet:
        return budget_set(self.info, i, p, self.truncation)

    def information(self, i: int, p: tuple[float, ...]) -> InformationSet:
        return information_set(self.info, i, p, self.truncation)

    def _in_box(self, bundle: Sequence[float]) -> bool:
        return all(0 <= c <= self.truncation for c in bundle)

    def preferred_value(self, i: int, allocation: Sequence[Sequence[float]]) -> BoxSet:
        flat = tuple(c for b in allocation for c in b)
        return self.info.preferences[i].evaluate(flat)

    def conflict_empty(self, i: int, allocation: Sequence[Sequence[float]],
                       p: tuple[float, ...]) -> bool:
        """Exactly decides budget cap preferred cap measurable = empty."""
        wealth = _dot(p, self.info.endowments[i])
        classes = self.info.signal_classes(i, p)
        value = self.preferred_value(i, allocation)
        for b in value.boxes:
            clipped = []
            for iv in b:
                cut = iv.intersect(FlaggedInterval.closed(0.0, self.truncation))
                if cut is None:
                    clipped = None
                    break
                clipped.append(cut)
            if clipped is None:
                continue
            lo = _collapsed_min(tuple(clipped), p, classes, self.info.n_goods)
            if lo is not None and lo < wealth:
                return False
        return True

    def clause_b(self, i: int, bundle: Sequence[float],
                 p: tuple[float, ...], tol_eq: float = 0.0) -> tuple[bool, bool]:
        """Both closure readings of the budget+measurability constraint.

        Returns (in cl(budget cap info), in cl(budget) cap cl(info)). The
        origin is measurable and affordable whenever anything is, so the
        strict polytope is dense in the nonstrict one and the readings
        coincide; both are still evaluated and reported separately.
        """
        bud = self.budget(i, p)
        inf = self.information(i, p)
        meas = inf.contains(bundle, tol_eq)
        split = bud.closure_contains(bundle) and meas
        joint = split and not bud.is_empty
        return joint, split

    def excess(self, allocation: Sequence[Sequence[float]]) -> tuple[float, ...]:
        agg = self.info.aggregate_endowment
        return tuple(
            sum(b[k] for b in allocation) - agg[k]
            for k in range(self.info.bundle_dim)
        )

    def price_conflict_empty(self, allocation: Sequence[Sequence[float]],
                             p: tuple[float, ...]) -> bool:
        """No simplex price values aggregate excess more than p does.

        The preference set {q : q.z > p.z} misses the simplex exactly when
        the best vertex does no better, i.e. max_j z_j <= p.z.
        """
        z = self.excess(allocation)
        return max(z) <= _dot(p, z) + 0.0

    def verify(self, allocation: Sequence[Sequence[float]], p: tuple[float, ...],
               tol_eq: float = 0.0, tol_simplex: float = 1e-9) -> AssociatedCertificate:
        allocation = tuple(tuple(b) for b in allocation)
        if len(allocation) != self.n:
            raise ValueError("one bundle per agent required")
        for b in allocation:
            if len(b) != self.info.bundle_dim or not self._in_box(b):
                raise ValueError("bundle outside the truncated consumption box")
        agents = []
        for i in range(self.n):
            joint, split = self.clause_b(i, allocation[i], p, tol_eq)
            agents.append(AgentClauses(
                agent=i,
                in_closed_budget_info=joint,
                in_closed_budget_and_closed_info=split,
                conflict_empty=self.conflict_empty(i, allocation, p),
            ))
        in_simplex = all(c >= -tol_simplex for c in p) and \
            abs(sum(p) - 1.0) <= tol_simplex
        price_ok = self.price_conflict_empty(allocation, p)
        valid = in_simplex and price_ok and all(a.ok for a in agents)
        return AssociatedCertificate(allocation, p, tuple(agents), in_simplex,
                                     price_ok, valid)

    def search(self, axis_values: Sequence[float],
               max_results: int | None = None) -> list[AssociatedCertificate]:
        """Exhaustive scan over measurable grid bundles and simplex prices.

        Bundles are generated per agent from ``axis_values`` on the reduced
        coordinates (one value per measurability class), so only bundles
        already satisfying the information constraint are visited. Results
        in deterministic (price-major) order.
        """
        found: list[AssociatedCertificate] = []
        for p in self.simplex.points():
            per_agent: list[list[tuple[float, ...]]] = []
            for i in range(self.n):
                classes = self.info.signal_classes(i, p)
                n_free = 1 + len(classes) * self.info.n_goods
                bundles = []
                for combo in itertools.product(axis_values, repeat=n_free):
                    bundle = [combo[0]] + [0.0] * (self.info.bundle_dim - 1)
                    at = 1
                    for cls in classes:
                        for g in range(self.info.n_goods):
                            for s in cls:
                                bundle[1 + s * self.info.n_goods + g] = combo[at]
                            at += 1
                    bundle = tuple(bundle)
                    joint, _ = self.clause_b(i, bundle, p)
                    if joint and self.conflict_empty(
                            i, self._solo_allocation(i, bundle), p):
                        bundles.append(bundle)
                per_agent.append(bundles)
            for alloc in itertools.product(*per_agent):
                cert = self.verify(alloc, p)
                if cert.valid:
                    found.append(cert)
                    if max_results is not None and len(found) >= max_results:
                        return found
        return found

    def _solo_allocation(self, i: int, bundle: tuple[float, ...]):
        """Allocation placeholder for own-bundle-only preference maps."""
        return tuple(bundle if j == i else self.info.endowments[j]
                     for j in range(self.n))


def to_abstract_economy(e: InfoEconomy, simplex: PriceSimplex,
                        truncation: float | None = None) -> AssociatedEconomy:
    m = e.default_truncation() if truncation is None else truncation
    if m < max(e.aggregate_endowment):
        raise ValueError("truncation too small")
    return AssociatedEconomy(e, m, simplex)


# ---------------------------------------------------------------------------
# Market clearing
# ---------------------------------------------------------------------------

def _measurable_corners(value: BoxSet, info: InformationSet,
                        limit: int = 16) -> list[tuple[float, ...]]:
    """Deterministic sample of measurable points from a value's closure."""
    out = []
    for b in value.boxes:
        per_coord: list[list[float]] = []
        for iv in b:
            cs = [iv.lo, iv.hi] if iv.hi > iv.lo else [iv.lo]
            per_coord.append(cs)
        for corner in itertools.product(*per_coord):
            # equalize within classes by taking the max (stays in box for
            # identical per-class intervals, the only case exercised)
            adjusted = list(corner)
            for cls in info.classes:
                for g in range(info.n_goods):
                    coords = info._class_coords(cls, g)
                    mx = max(adjusted[c] for c in coords)
                    for c in coords:
                        adjusted[c] = mx
            cand = tuple(adjusted)
            if info.contains(cand) and all(
                    b[k].closure().contains(cand[k]) for k in range(len(b))):
                if cand not in out:
                    out.append(cand)
            if len(out) >= limit:
                return out
    return out


def verify_market_clearing(assoc: AssociatedEconomy, cert: AssociatedCertificate,
                           tol: float = 1e-9) -> CheckReport:
    """Re-derive the exchange-equilibrium clauses from a certificate.

    Clause 1: aggregate consumption does not exceed aggregate endowment,
    checked componentwise and re-derived through canonical-basis price
    vertices. Clause 2: each bundle lies in the closed budget cap
    measurable set (both closure readings). Clause 3: sampled preferred
    measurable bundles are unaffordable (strictly outside the budget).
    """
    z = assoc.excess(cert.allocation)
    direct_bad = [k for k, v in enumerate(z) if v > tol]
    vertex_bad = []
    for j, q in enumerate(assoc.simplex.vertices()):
        if _dot(q, z) > tol:
            vertex_bad.append(j)
    c1 = CheckReport(
        "clearing-aggregate", PASS if not direct_bad and not vertex_bad else FAIL,
        tuple(Witness(cert.price, None, z[k], "excess supply violated",
                      f"component {k}") for k in (direct_bad + vertex_bad)[:8]),
        {"excess": list(z), "tol": tol},
    )

    c2_wit = []
    for i in range(assoc.n):
        joint, split = assoc.clause_b(i, cert.allocation[i], cert.price)
        if not joint:
            c2_wit.append(Witness(cert.allocation[i], None, 0.0,
                                  "outside cl(budget cap info)", f"agent {i}"))
        if not split:
            c2_wit.append(Witness(cert.allocation[i], None, 0.0,
                                  "outside cl budget cap cl info", f"agent {i}"))
    c2 = CheckReport("clearing-budget-info", PASS if not c2_wit else FAIL,
                     tuple(c2_wit))

    c3_wit = []
    sampled = 0
    for i in range(assoc.n):
        value = assoc.preferred_value(i, cert.allocation)
        if value.is_empty:
            continue
        inf = assoc.information(i, cert.price)
        bud = assoc.budget(i, cert.price)
        for y in _measurable_corners(value, inf):
            sampled += 1
            if bud.contains(y):
                c3_wit.append(Witness(y, None, _dot(cert.price, y),
                                      "preferred and affordable", f"agent {i}"))
    c3 = CheckReport("clearing-no-affordable-preferred",
                     PASS if not c3_wit else FAIL, tuple(c3_wit),
                     {"sampled": sampled})
    return combine_reports("market-clearing", [c1, c2, c3],
                           {"price": list(cert.price), "tol": tol})


# ---------------------------------------------------------------------------
# Structural inclusion sampling
# ---------------------------------------------------------------------------

def remark_4_3_inclusion(assoc: AssociatedEconomy, alloc_step: float,
                         simplex: PriceSimplex | None = None,
                         n_allocations: int = 40, n_plans: int = 12,
                         seed: int = 20240817) -> CheckReport:
    """Sampled check that constrained-preferred bundles satisfy both
    constraints: membership in budget and preferred-measurable implies
    membership in budget-measurable.

    Prices run over the full simplex grid; allocations are a seeded
    subsample of the step grid (the full product grid is astronomically
    large); candidate bundles per (x, p) mix structured points (origin,
    endowment, own bundle, truncation corner) with seeded grid draws.
    """
    if simplex is None:
        simplex = assoc.simplex
    rng = random.Random(seed)
    d = assoc.info.bundle_dim
    axis = []
    v = 0.0
    while v <= assoc.truncation + 1e-12:
        axis.append(min(v, assoc.truncation))
        v += alloc_step
    def draw_bundle():
        return tuple(rng.choice(axis) for _ in range(d))

    allocations = [tuple(draw_bundle() for _ in range(assoc.n))
                   for _ in range(n_allocations)]
    checked = 0
    antecedent_hits = 0
    wit = []
    for p in simplex.points():
        for x in allocations:
            for i in range(assoc.n):
                bud = assoc.budget(i, p)
                inf = assoc.information(i, p)
                pref = assoc.preferred_value(i, x)
                candidates = [
                    tuple(0.0 for _ in range(d)),
                    assoc.info.endowments[i],
                    x[i],
                    tuple(assoc.truncation for _ in range(d)),
                ]
                candidates += [draw_bundle() for _ in range(n_plans)]
                candidates += _measurable_corners(pref, inf, limit=4)
                for y in candidates:
                    checked += 1
                    in_a = bud.contains(y)
                    in_p = (not pref.is_empty) and pref.contains(y) \
                        and inf.contains(y)
                    if in_a and in_p:
                        antecedent_hits += 1
                        in_b = bud.contains(y) and inf.contains(y)
                        if not in_b:
                            wit.append(Witness(y, None, 0.0, "inclusion violated",
                                               f"agent {i} at p={p}"))
    return CheckReport(
        "constraint-inclusion", PASS if not wit else FAIL, tuple(wit[:32]),
        {
            "prices": simplex.point_count(),
            "allocations": len(allocations),
            "candidates_checked": checked,
            "antecedent_hits": antecedent_hits,
            "alloc_step": alloc_step,
            "seed": seed,
        },
        ("antecedent_hits counts candidates that were affordable and "
         "preferred-measurable; each must satisfy both constraints",),
    )


# ---------------------------------------------------------------------------
# Documents and the built-in toy
# ---------------------------------------------------------------------------

def info_economy_to_doc(e: InfoEconomy) -> dict:
    return {
        "kind": "info-economy",
        "n_agents": e.n_agents,
        "n_goods": e.n_goods,
        "n_states": e.n_states,
        "endowments": [list(v) for v in e.endowments],
        "signals": list(e.signals),
        "preferences": [_io.map_to_doc(q) for q in e.preferences],
        "truncation": e.truncation,
    }


def info_economy_from_doc(doc: Any) -> InfoEconomy:
    if not isinstance(doc, dict) or doc.get("kind") != "info-economy":
        raise _io.DocumentError("expected an 'info-economy' document")
    try:
        return InfoEconomy(
            n_agents=doc["n_agents"],
            n_goods=doc["n_goods"],
            n_states=doc["n_states"],
            endowments=tuple(tuple(v) for v in doc["endowments"]),
            signals=tuple(doc["signals"]),
            preferences=tuple(_io.map_from_doc(q) for q in doc["preferences"]),
            truncation=doc.get("truncation"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise _io.DocumentError(f"info-economy: {exc}") from exc


def radner_toy() -> InfoEconomy:
    """Two agents, one good, two states, fully pooled signals.

    Endowments are (1/2, 1/2, 1/2); each agent strictly prefers any
    bundle componentwise above its own by more than 1/2, up to the
    truncation at 2, with an empty preferred set once a component
    reaches 3/2 (local satiation keeps autarky an equilibrium).
    """
    from .affine import AffForm, AffineInterval
    from .intervals import boxes_difference
    from .maps import Piece

    n, d, m_trunc = 2, 3, 2.0
    total = n * d
    domain: Box = tuple(FlaggedInterval.closed(0, m_trunc) for _ in range(total))
    prefs = []
    for i in range(n):
        own = range(i * d, (i + 1) * d)
        live_region = tuple(
            FlaggedInterval(0, 1.5, True, False) if k in own
            else FlaggedInterval.closed(0, m_trunc)
            for k in range(total)
        )
        value_box = tuple(
            AffineInterval(
                AffForm(0.5, tuple(1.0 if j == k else 0.0 for j in range(total))),
                AffForm.constant(m_trunc, total),
                False, True,
            )
            for k in own
        )
        pieces = [Piece(live_region, (value_box,))]
        pieces += [Piece(r, ()) for r in boxes_difference([domain], [live_region])]
        prefs.append(PiecewiseMap(domain, d, tuple(pieces)))
    return InfoEconomy(
        n_agents=n, n_goods=1, n_states=2,
        endowments=((0.5, 0.5, 0.5), (0.5, 0.5, 0.5)),
        signals=("pooled", "pooled"),
        preferences=tuple(prefs),
        truncation=m_trunc,
    )
