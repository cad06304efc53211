"""Piecewise set-valued maps on flagged boxes.

A :class:`PiecewiseMap` partitions a flagged-box domain into regions, each
carrying a finite union of affine-endpoint interval boxes (possibly the
empty value).  The partition is validated symbolically at construction:
pieces are pairwise disjoint and cover the domain exactly.

Derived maps (`t_upper`, `adherence`, `intersect_maps`) are computed exactly
by refining the domain at axis-aligned crossing loci of the affine endpoint
forms.  Crossings that are not axis-aligned (endpoint differences depending
on two or more variables with indefinite sign) raise
:class:`NonAxisAlignedSplitError`; boxes are the only region language here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .affine import (
    AffForm,
    AffineBox,
    AffineInterval,
    PieceValue,
    affine_box_closure,
    affine_box_constant,
    affine_box_sort_key,
    constant_box_of,
    instantiate_box,
)
from .intervals import (
    Box,
    BoxSet,
    DimensionMismatchError,
    FlaggedInterval,
    box_contains,
    box_closure,
    box_corners,
    box_intersect,
    box_sort_key,
    boxes_difference,
    canonical_boxes,
    merge_cells,
)


class DomainError(ValueError):
    """A point lies outside the map's domain."""


class NonAxisAlignedSplitError(ValueError):
    """An exact result would need a region boundary that is not axis-aligned."""


# ---------------------------------------------------------------------------
# Pieces and maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Piece:
    region: Box
    value: PieceValue


def normalize_value(boxes: Iterable[AffineBox], domain_dim: int) -> PieceValue:
    """Dedupe and order a union of affine boxes; constant unions are canonicalized."""
    uniq = list(dict.fromkeys(boxes))
    if not uniq:
        return ()
    consts = [constant_box_of(b) for b in uniq]
    if all(c is not None for c in consts):
        dim = len(uniq[0])
        merged = canonical_boxes(dim, [c for c in consts if c is not None])
        return tuple(affine_box_constant(b, domain_dim) for b in merged)
    return tuple(sorted(uniq, key=affine_box_sort_key))


@dataclass(frozen=True)
class PiecewiseMap:
    """A set-valued map given by a finite flagged-box partition of its domain."""

    domain: Box
    codomain_dim: int
    pieces: tuple[Piece, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        ddim = len(self.domain)
        regions = [p.region for p in self.pieces]
        for r in regions:
            if len(r) != ddim:
                raise DimensionMismatchError("piece region dimension does not match domain")
            if box_intersect(r, self.domain) != r:
                raise ValueError("piece region escapes the domain")
        for i in range(len(regions)):
            for j in range(i + 1, len(regions)):
                if box_intersect(regions[i], regions[j]) is not None:
                    raise ValueError(f"pieces {i} and {j} overlap")
        if boxes_difference([self.domain], regions):
            raise ValueError("pieces do not cover the domain")
        for p in self.pieces:
            for b in p.value:
                if len(b) != self.codomain_dim:
                    raise DimensionMismatchError("value box dimension does not match codomain")
                for ai in b:
                    if ai.lo.domain_dim != ddim or ai.hi.domain_dim != ddim:
                        raise DimensionMismatchError("affine form dimension does not match domain")
                    _validate_width(p.region, ai)

    # -- basic queries --------------------------------------------------------

    @property
    def domain_dim(self) -> int:
        return len(self.domain)

    def piece_at(self, x: Sequence[float]) -> tuple[int, Piece]:
        for i, p in enumerate(self.pieces):
            if box_contains(p.region, x):
                return i, p
        raise DomainError(f"point {tuple(x)} outside map domain")

    def evaluate(self, x: Sequence[float]) -> BoxSet:
        key = tuple(x)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        _, p = self.piece_at(key)
        boxes = []
        for b in p.value:
            inst = instantiate_box(b, key)
            if inst is not None:
                boxes.append(inst)
        out = BoxSet.of(self.codomain_dim, boxes)
        self._cache[key] = out
        return out

    def max_slope(self) -> float:
        worst = 0.0
        for p in self.pieces:
            for b in p.value:
                for ai in b:
                    worst = max(worst, ai.slope_l1())
        return worst

    def nonempty_region(self) -> BoxSet:
        """Union of piece regions carrying a nonempty value."""
        return BoxSet.of(self.domain_dim, [p.region for p in self.pieces if p.value])

    def domain_set(self) -> BoxSet:
        return BoxSet.single(self.domain)


def constant_map(domain: Box, value: BoxSet) -> PiecewiseMap:
    dd = len(domain)
    val = normalize_value([affine_box_constant(b, dd) for b in value.boxes], dd)
    return PiecewiseMap(domain, value.dim, (Piece(domain, val),))


# ---------------------------------------------------------------------------
# Sign analysis of affine forms over regions
# ---------------------------------------------------------------------------

def _region_rep(region: Box) -> tuple[float, ...]:
    return tuple(iv.lo if iv.is_point else (iv.lo + iv.hi) / 2.0 for iv in region)


def _effective_sign(region: Box, f: AffForm) -> int:
    """Sign of ``f`` on the region: +1, -1, or 0 (identically zero).

    Weak signs are sharpened when the zero locus misses the region (the
    single-variable root lies on an excluded boundary).  Raises when the
    sign genuinely changes inside the region.
    """
    vals = [f(c) for c in box_corners(region)]
    mn, mx = min(vals), max(vals)
    if mn > 0:
        return 1
    if mx < 0:
        return -1
    if mn == 0 and mx == 0:
        return 0
    active = f.active_vars()
    if len(active) == 1:
        j = active[0]
        root = -f.const / f.coeffs[j]
        if not region[j].contains(root):
            v = f(_region_rep(region))
            if v > 0:
                return 1
            if v < 0:
                return -1
            raise AssertionError("degenerate sign sample")
        raise AssertionError("single-variable crossing inside an unrefined region")
    raise NonAxisAlignedSplitError(
        "affine comparison changes sign inside a region along a non-axis-aligned locus"
    )


def _validate_width(region: Box, ai: AffineInterval) -> None:
    w = ai.width_form()
    vals = [w(c) for c in box_corners(region)]
    mn = min(vals)
    if mn < 0:
        raise ValueError("value endpoints out of order on the piece region")
    if ai.lo_closed and ai.hi_closed:
        return
    # open flags: the slice must be nonempty (positive width) on the region itself
    active = w.active_vars()
    if not active:
        if w.const <= 0:
            raise ValueError("open-flag value with empty slices; encode the empty value instead")
        return
    if len(active) == 1:
        j = active[0]
        root = -w.const / w.coeffs[j]
        if region[j].contains(root) or w(_region_rep(region)) <= 0:
            raise ValueError("open-flag value degenerates inside its region")
        return
    if mn <= 0:
        raise ValueError("open-flag value may degenerate inside its region")


# ---------------------------------------------------------------------------
# Domain refinement
# ---------------------------------------------------------------------------

def _axis_atoms(iv: FlaggedInterval, cuts: set[float]) -> list[FlaggedInterval]:
    inner = sorted(c for c in cuts if iv.contains(c))
    atoms: list[FlaggedInterval] = []
    lo, lc = iv.lo, iv.lo_closed
    for c in inner:
        seg = FlaggedInterval.make(lo, c, lc, False)
        if seg is not None:
            atoms.append(seg)
        atoms.append(FlaggedInterval.point(c))
        lo, lc = c, False
    seg = FlaggedInterval.make(lo, iv.hi, lc, iv.hi_closed)
    if seg is not None:
        atoms.append(seg)
    return atoms


def _add_root_cut(cuts: dict[int, set[float]], region: Box, f: AffForm) -> None:
    active = f.active_vars()
    if len(active) != 1:
        return
    j = active[0]
    root = -f.const / f.coeffs[j]
    if region[j].contains(root):
        cuts.setdefault(j, set()).add(root)


def _atom_in_closed_box(atom: Box, closed: Box) -> bool:
    for a, c in zip(atom, closed):
        if a.lo < c.lo or a.hi > c.hi:
            return False
    return True


def _rebuild(domain: Box, codomain_dim: int, cuts: dict[int, set[float]],
             value_at: Callable[[Box, tuple[float, ...]], PieceValue]) -> PiecewiseMap:
    """Atomize the domain at the cuts, compute a value per atom, merge by value."""
    atom_lists = [_axis_atoms(domain[d], cuts.get(d, set())) for d in range(len(domain))]
    groups: dict[PieceValue, list[tuple[int, ...]]] = {}
    for idx in itertools.product(*(range(len(al)) for al in atom_lists)):
        atom = tuple(atom_lists[d][i] for d, i in enumerate(idx))
        rep = _region_rep(atom)
        groups.setdefault(value_at(atom, rep), []).append(idx)
    pieces: list[Piece] = []
    for value, cells in groups.items():
        for box in merge_cells(atom_lists, cells):
            pieces.append(Piece(box, value))
    pieces.sort(key=lambda p: box_sort_key(p.region))
    return PiecewiseMap(domain, codomain_dim, tuple(pieces))


# ---------------------------------------------------------------------------
# Affine interval intersection on a sign-stable region
# ---------------------------------------------------------------------------

def _sup_form(region: Box, a: AffForm, a_closed: bool, b: AffForm, b_closed: bool) -> tuple[AffForm, bool]:
    s = _effective_sign(region, a.sub(b))
    if s > 0:
        return a, a_closed
    if s < 0:
        return b, b_closed
    return a, (a_closed and b_closed)


def _intersect_affine_intervals(region: Box, a: AffineInterval, b: AffineInterval) -> AffineInterval | None:
    lo, lc = _sup_form(region, a.lo, a.lo_closed, b.lo, b.lo_closed)
    s = _effective_sign(region, a.hi.sub(b.hi))
    if s < 0:
        hi_form, hc = a.hi, a.hi_closed
    elif s > 0:
        hi_form, hc = b.hi, b.hi_closed
    else:
        hi_form, hc = a.hi, (a.hi_closed and b.hi_closed)
    w = hi_form.sub(lo)
    sw = _effective_sign(region, w)
    if sw < 0:
        return None
    if sw == 0 and not (lc and hc):
        return None
    return AffineInterval(lo, hi_form, lc, hc)


def _intersect_affine_boxes(region: Box, a: AffineBox, b: AffineBox) -> AffineBox | None:
    out = []
    for ia, ib in zip(a, b):
        r = _intersect_affine_intervals(region, ia, ib)
        if r is None:
            return None
        out.append(r)
    return tuple(out)


def _pair_cut_forms(a: AffineInterval, b: AffineInterval) -> list[AffForm]:
    return [
        a.lo.sub(b.lo),
        a.hi.sub(b.hi),
        a.hi.sub(a.lo),
        a.hi.sub(b.lo),
        b.hi.sub(a.lo),
        b.hi.sub(b.lo),
    ]


# ---------------------------------------------------------------------------
# Dilation, clipping, and adherence operators
# ---------------------------------------------------------------------------

def _dilate_affine_box(b: AffineBox, eps: float) -> AffineBox:
    return tuple(
        AffineInterval(ai.lo.shift(-eps), ai.hi.shift(eps), False, False) for ai in b
    )


def t_upper(t: PiecewiseMap, eps: float, d: BoxSet) -> PiecewiseMap:
    """The compact-clipped dilation ``x -> (T(x) + (-eps, eps)^k) intersect D``.

    ``D`` must be all-closed (compact); pieces whose clipped value comes out
    empty are kept with the empty value.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if d.dim != t.codomain_dim:
        raise DimensionMismatchError("D dimension does not match the codomain")
    for b in d.boxes:
        for iv in b:
            if not (iv.lo_closed and iv.hi_closed):
                raise ValueError("D must be compact")
    ddim = t.domain_dim
    d_affine = [affine_box_constant(b, ddim) for b in d.boxes]

    cuts: dict[int, set[float]] = {}
    for p in t.pieces:
        for d_ax in range(ddim):
            cuts.setdefault(d_ax, set()).update((p.region[d_ax].lo, p.region[d_ax].hi))
        for vb in p.value:
            dil = _dilate_affine_box(vb, eps)
            for db in d_affine:
                for k in range(t.codomain_dim):
                    for f in _pair_cut_forms(dil[k], db[k]):
                        _add_root_cut(cuts, p.region, f)

    def value_at(atom: Box, rep: tuple[float, ...]) -> PieceValue:
        _, p = t.piece_at(rep)
        if not p.value:
            return ()
        out = []
        for vb in p.value:
            dil = _dilate_affine_box(vb, eps)
            for db in d_affine:
                r = _intersect_affine_boxes(atom, dil, db)
                if r is not None:
                    out.append(r)
        return normalize_value(out, ddim)

    return _rebuild(t.domain, t.codomain_dim, cuts, value_at)


def adherence(t: PiecewiseMap) -> PiecewiseMap:
    """The graph-adherence map: value at x is the slice of the closure of the graph.

    Exact for validated pieces: each piece's contribution at x in the closure
    of its region is its value with closed flags and closed region.  Satisfies
    ``closure(evaluate(t, x)) subseteq evaluate(adherence(t), x)`` pointwise.
    """
    ddim = t.domain_dim
    cuts: dict[int, set[float]] = {}
    for p in t.pieces:
        for d_ax in range(ddim):
            cuts.setdefault(d_ax, set()).update((p.region[d_ax].lo, p.region[d_ax].hi))
    contributors = [(box_closure(p.region), tuple(affine_box_closure(b) for b in p.value))
                    for p in t.pieces if p.value]

    def value_at(atom: Box, rep: tuple[float, ...]) -> PieceValue:
        out: list[AffineBox] = []
        for creg, cval in contributors:
            if _atom_in_closed_box(atom, creg):
                out.extend(cval)
        return normalize_value(out, ddim)

    return _rebuild(t.domain, t.codomain_dim, cuts, value_at)


def intersect_maps(a: PiecewiseMap, b: PiecewiseMap) -> PiecewiseMap:
    """Pointwise intersection over the common refinement of two partitions."""
    if a.domain != b.domain:
        raise ValueError("maps must share a domain")
    if a.codomain_dim != b.codomain_dim:
        raise DimensionMismatchError("codomain dimensions differ")
    ddim = a.domain_dim
    cuts: dict[int, set[float]] = {}
    for m in (a, b):
        for p in m.pieces:
            for d_ax in range(ddim):
                cuts.setdefault(d_ax, set()).update((p.region[d_ax].lo, p.region[d_ax].hi))
    for pa in a.pieces:
        for pb in b.pieces:
            overlap = box_intersect(pa.region, pb.region)
            if overlap is None:
                continue
            for ba in pa.value:
                for bb in pb.value:
                    for k in range(a.codomain_dim):
                        for f in _pair_cut_forms(ba[k], bb[k]):
                            _add_root_cut(cuts, overlap, f)

    def value_at(atom: Box, rep: tuple[float, ...]) -> PieceValue:
        _, pa = a.piece_at(rep)
        _, pb = b.piece_at(rep)
        if not pa.value or not pb.value:
            return ()
        out = []
        for ba in pa.value:
            for bb in pb.value:
                r = _intersect_affine_boxes(atom, ba, bb)
                if r is not None:
                    out.append(r)
        return normalize_value(out, ddim)

    return _rebuild(a.domain, a.codomain_dim, cuts, value_at)


def restrict(t: PiecewiseMap, sub: Box) -> PiecewiseMap:
    """The same map over a sub-box of its domain."""
    if box_intersect(sub, t.domain) != sub:
        raise DomainError("restriction box escapes the domain")
    pieces = []
    for p in t.pieces:
        r = box_intersect(p.region, sub)
        if r is not None:
            pieces.append(Piece(r, p.value))
    pieces.sort(key=lambda p: box_sort_key(p.region))
    return PiecewiseMap(sub, t.codomain_dim, tuple(pieces))


def closure_values(t: PiecewiseMap) -> PiecewiseMap:
    """Pointwise closure of values (flags only; regions untouched)."""
    pieces = tuple(Piece(p.region, normalize_value([affine_box_closure(b) for b in p.value], t.domain_dim))
                   for p in t.pieces)
    return PiecewiseMap(t.domain, t.codomain_dim, pieces)


def select_by_region(domain: Box, inner: PiecewiseMap, inner_boxes: Iterable[Box],
                     outer: PiecewiseMap) -> PiecewiseMap:
    """Piece together ``inner`` on the given boxes and ``outer`` elsewhere."""
    inner_boxes = list(inner_boxes)
    pieces: list[Piece] = []
    for b in inner_boxes:
        pieces.extend(restrict(inner, b).pieces)
    for c in boxes_difference([domain], inner_boxes):
        pieces.extend(restrict(outer, c).pieces)
    pieces.sort(key=lambda p: box_sort_key(p.region))
    return PiecewiseMap(domain, inner.codomain_dim, tuple(pieces))
