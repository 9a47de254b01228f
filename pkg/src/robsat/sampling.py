"""Rigorous PL sampling of polynomial systems on boxes, and the two-sided
decision that the sampling gap permits.

The interpolation error bound per cell subtracts the tangent plane at the
cell center before applying interval arithmetic: the PL interpolation
reproduces affine functions exactly, so only the gradient's deviation from
its center value contributes, and the bound vanishes on affine systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .grid import FreudenthalGrid, freudenthal_grid
from .intervals import Interval
from .pl_map import Norm, PLMap
from .polynomials import Polynomial, PolynomialError, parse_polynomial
from .robustness import RobTag, decide_robsat


def _combine_component_bounds(bounds: list[Fraction], norm: Norm) -> Fraction:
    if norm == Norm.LINF:
        return max(bounds, default=Fraction(0))
    # Sum bounds both for l1 and as a rational over-approximation of l2.
    return sum(bounds, Fraction(0))


def sample_polynomial(polys: list[Polynomial], grid: FreudenthalGrid,
                      norm: Norm = Norm.LINF) -> tuple[PLMap, Fraction]:
    """Exact vertex samples plus a rigorous uniform bound on
    max_x |poly(x) - interpolant(x)| over the box."""
    for p in polys:
        if p.nvars != grid.m:
            raise PolynomialError("variable count does not match the box")
    values = {
        vid: tuple(p.eval_at(pt) for p in polys)
        for vid, pt in grid.points.items()
    }
    f = PLMap(grid.complex, len(polys), values)
    widths = grid.cell_widths()
    component_bounds = []
    for p in polys:
        grads = [p.diff(i) for i in range(grid.m)]
        worst = Fraction(0)
        for cell in grid.cells():
            box = [Interval(lo, hi) for lo, hi in grid.cell_box(cell)]
            center = [(iv.lo + iv.hi) / 2 for iv in box]
            cell_bound = Fraction(0)
            for i in range(grid.m):
                rng = grads[i].interval_eval(box)
                at_center = grads[i].eval_at(center)
                deviation = max(rng.hi - at_center, at_center - rng.lo)
                cell_bound += deviation * widths[i]
            worst = max(worst, cell_bound)
        component_bounds.append(worst)
    return f, _combine_component_bounds(component_bounds, norm)


class SampledTag(Enum):
    EVERY_ALPHA_HAS_ROOT = "EveryAlphaHasRoot"
    EXISTS_ALPHA_PLUS_EPS_NO_ROOT = "ExistsAlphaPlusEpsNoRoot"
    UNKNOWN = "Unknown"


@dataclass
class SampledDecision:
    tag: SampledTag
    reason: str
    resolution: list[int]
    gap: Fraction
    tested_alpha: Fraction


def decide_sampled(exprs, bounds, resolution, alpha, epsilon,
                   var_names: list[str] | None = None, norm: Norm = Norm.LINF,
                   assume_hopf: bool = True) -> SampledDecision:
    """Either every alpha-perturbation of the polynomial system has a root in
    the box, or some (alpha + epsilon)-perturbation has none.

    The box is refined until the sampling gap is at most epsilon/2, and the PL
    decision runs at alpha + epsilon/2: a RobustYes transfers to every
    alpha-perturbation of the true system (they are within alpha + gap of the
    sample), and a RobustNo yields a rootless perturbation within
    alpha + epsilon/2 + gap <= alpha + epsilon.
    """
    alpha = Fraction(alpha)
    epsilon = Fraction(epsilon)
    if alpha <= 0 or epsilon <= 0:
        raise ValueError("alpha and epsilon must be positive")
    if var_names is None:
        var_names = [f"x{i}" for i in range(len(bounds))]
    polys = [parse_polynomial(e, var_names) if isinstance(e, str) else e for e in exprs]
    res = resolution if isinstance(resolution, list) else [int(resolution)] * len(bounds)
    for _ in range(24):
        grid = freudenthal_grid(bounds, res)
        f, gap = sample_polynomial(polys, grid, norm)
        if gap <= epsilon / 2:
            break
        res = [2 * r for r in res]
    else:
        raise RuntimeError("sampling gap did not reach epsilon/2; system too steep")
    tested = alpha + epsilon / 2
    verdict = decide_robsat(f, tested, norm, assume_hopf=assume_hopf)
    if verdict.tag is RobTag.ROBUST_YES:
        tag = SampledTag.EVERY_ALPHA_HAS_ROOT
    elif verdict.tag is RobTag.ROBUST_NO:
        tag = SampledTag.EXISTS_ALPHA_PLUS_EPS_NO_ROOT
    else:
        tag = SampledTag.UNKNOWN
    return SampledDecision(tag, verdict.reason, res, gap, tested)
