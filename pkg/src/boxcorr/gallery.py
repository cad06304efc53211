"""Built-in worked instances used by the golden suites and the CLI.

Everything here is constructed through the public constructors, so the
partition/width validation runs on each call. Region systems that are
not boxes (complements of cubes, punctured cubes) are produced with
``boxes_difference`` and shared across the pieces that carry one value.
"""

from __future__ import annotations

from .affine import AffForm, AffineInterval, PieceValue
from .economy import AbstractEconomy, AgentSpec
from .fixedpoint import ProductMap
from .intervals import Box, BoxSet, FlaggedInterval, boxes_difference
from .maps import Piece, PiecewiseMap, constant_map, intersect_maps, select_by_region

I = FlaggedInterval


def _const_value(lo: float, hi: float, lo_closed: bool, hi_closed: bool,
                 domain_dim: int) -> PieceValue:
    return ((AffineInterval(AffForm.constant(lo, domain_dim),
                            AffForm.constant(hi, domain_dim),
                            lo_closed, hi_closed),),)


def ex2_1() -> tuple[PiecewiseMap, BoxSet]:
    """A map on (0,2) that drops the point 1 from its left values.

    Values are (0,1) on (0,1] and [1,2) on (1,2); the target set is the
    singleton {1}. Not USC at 1, but every clipped dilation is the
    constant {1}.
    """
    dom: Box = (I.open(0, 2),)
    t1 = PiecewiseMap(dom, 1, (
        Piece((I(0, 1, False, True),), _const_value(0, 1, False, False, 1)),
        Piece((I.open(1, 2),), _const_value(1, 2, True, False, 1)),
    ))
    return t1, BoxSet.of(1, [(I.point(1),)])


def ex2_1_variant() -> tuple[PiecewiseMap, BoxSet]:
    """The same map intersected with the constant {1}: empty on (0,1]."""
    t1, d = ex2_1()
    return intersect_maps(t1, constant_map(t1.domain, d)), d


def ex2_2() -> tuple[PiecewiseMap, PiecewiseMap, BoxSet]:
    """A dual pair on (0,2) with an isolated spike at 1.

    First map: [2-x,2] on (0,1), {4} at 1, [1,2] on (1,2). Second map:
    [2,3] on (0,1], {2} on (1,2). Target set [1,2]. The clipped dilated
    intersection is empty at 1 for small radii, and its adherence is the
    constant {2} everywhere.
    """
    dom: Box = (I.open(0, 2),)
    t1 = PiecewiseMap(dom, 1, (
        Piece((I.open(0, 1),),
              ((AffineInterval(AffForm(2.0, (-1.0,)), AffForm.constant(2.0, 1),
                               True, True),),)),
        Piece((I.point(1),), _const_value(4, 4, True, True, 1)),
        Piece((I.open(1, 2),), _const_value(1, 2, True, True, 1)),
    ))
    t2 = PiecewiseMap(dom, 1, (
        Piece((I(0, 1, False, True),), _const_value(2, 3, True, True, 1)),
        Piece((I.open(1, 2),), _const_value(2, 2, True, True, 1)),
    ))
    return t1, t2, BoxSet.of(1, [(I.closed(1, 2),)])


def ex2_2_composite() -> PiecewiseMap:
    """The undilated intersection of the pair clipped to the target set.

    Serves as the certification reference for chains built from the
    dilated composites.
    """
    t1, t2, d = ex2_2()
    return intersect_maps(intersect_maps(t1, t2), constant_map(t1.domain, d))


def ex4_1(n: int = 2) -> AbstractEconomy:
    """The n-agent economy on [0,4]^n with target sets [0,2].

    The constraint map's second case covers the open unit cube minus the
    open half cube (for n=1 this is exactly the half-open interval
    [1/2,1)), which keeps the conflict region equal to the full open
    unit cube in every dimension count.
    """
    if n < 1:
        raise ValueError("need at least one agent")
    x_full: Box = tuple(I.closed(0, 4) for _ in range(n))
    cube_half: Box = tuple(I.open(0, 0.5) for _ in range(n))
    cube_open: Box = tuple(I.open(0, 1) for _ in range(n))
    zero: Box = tuple(I.point(0) for _ in range(n))
    unit_halfopen: Box = tuple(I(0, 1, True, False) for _ in range(n))

    cube_rest = boxes_difference([cube_open], [cube_half])
    unit_minus_zero = boxes_difference([unit_halfopen], [zero])
    outside_a = boxes_difference([x_full], [cube_open, zero])
    outside_unit = boxes_difference([x_full], [unit_halfopen])

    agents = []
    for i in range(n):
        lo_1_minus_xi = AffForm(1.0, tuple(-1.0 if j == i else 0.0 for j in range(n)))
        hi_2_plus_xi = AffForm(2.0, tuple(1.0 if j == i else 0.0 for j in range(n)))
        two = AffForm.constant(2.0, n)

        a_pieces = [Piece(cube_half, ((AffineInterval(lo_1_minus_xi, two, True, True),),))]
        a_pieces += [Piece(r, ((AffineInterval(lo_1_minus_xi, two, True, False),),))
                     for r in cube_rest]
        a_pieces.append(Piece(zero, _const_value(3, 4, True, True, n)))
        a_pieces += [Piece(r, _const_value(0, 0.5, True, True, n)) for r in outside_a]

        p_pieces = [Piece(unit_halfopen,
                          ((AffineInterval(AffForm.constant(1.5, n), hi_2_plus_xi,
                                           True, True),),))]
        p_pieces += [Piece(r, _const_value(1, 2, True, True, n)) for r in outside_unit]

        b_pieces = [Piece(zero, _const_value(3, 4, True, True, n))]
        b_pieces += [Piece(r, _const_value(0, 2, True, True, n)) for r in unit_minus_zero]
        b_pieces += [Piece(r, _const_value(0, 2, True, False, n)) for r in outside_unit]

        agents.append(AgentSpec(
            x_box=(I.closed(0, 4),),
            d_set=BoxSet.of(1, [(I.closed(0, 2),)]),
            a_map=PiecewiseMap(x_full, 1, tuple(a_pieces)),
            p_map=PiecewiseMap(x_full, 1, tuple(p_pieces)),
            b_map=PiecewiseMap(x_full, 1, tuple(b_pieces)),
        ))
    return AbstractEconomy(tuple(agents))


def ex4_1_selection(n: int = 2) -> PiecewiseMap:
    """Constant selection [3/2,2] over the full product domain."""
    dom: Box = tuple(I.closed(0, 4) for _ in range(n))
    return constant_map(dom, BoxSet.of(1, [(I.closed(1.5, 2),)]))


def theorem_4_1_construction(e: AbstractEconomy) -> ProductMap:
    """The per-agent glued map: conflict values on W, B values elsewhere."""
    factors = []
    for i in range(len(e.agents)):
        w = e.conflict_region(i)
        factors.append(select_by_region(e.domain, e.conflict_map(i), w.boxes,
                                        e.agents[i].b_map))
    return ProductMap(tuple(factors), tuple(ag.d_set for ag in e.agents), e.blocks)


def ex2_2_economy() -> AbstractEconomy:
    """The dual pair embedded as one agent's (A,P) on the closed interval.

    Domain extended from (0,2) to [0,2] with the continuous-limit values
    at the new endpoints ({2} and [2,3] at 0; [1,2] and {2} at 2); the
    second constraint map is the constant [1,2], which is also the
    target set.
    """
    dom: Box = (I.closed(0, 2),)
    a = PiecewiseMap(dom, 1, (
        Piece((I.point(0),), _const_value(2, 2, True, True, 1)),
        Piece((I.open(0, 1),),
              ((AffineInterval(AffForm(2.0, (-1.0,)), AffForm.constant(2.0, 1),
                               True, True),),)),
        Piece((I.point(1),), _const_value(4, 4, True, True, 1)),
        Piece((I.open(1, 2),), _const_value(1, 2, True, True, 1)),
        Piece((I.point(2),), _const_value(1, 2, True, True, 1)),
    ))
    p = PiecewiseMap(dom, 1, (
        Piece((I.point(0),), _const_value(2, 3, True, True, 1)),
        Piece((I(0, 1, False, True),), _const_value(2, 3, True, True, 1)),
        Piece((I.open(1, 2),), _const_value(2, 2, True, True, 1)),
        Piece((I.point(2),), _const_value(2, 2, True, True, 1)),
    ))
    d = BoxSet.of(1, [(I.closed(1, 2),)])
    b = constant_map(dom, d)
    return AbstractEconomy((AgentSpec((I.closed(0, 2),), d, a, p, b),))
