"""Top-level decisions: robust satisfiability, exact robustness value,
component localization, and systems with inequality constraints.

Deciding whether every alpha-perturbation of f has a root reduces to the
non-extendability of a sphere-valued map over the combinatorial sublevel pair,
so the verdict inherits the exactness of the reduction and of the integer
cocycle solver.  The robustness value is then found by a monotone search over
the finite critical-value candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .complex_core import BaryPoint, full_subcomplex
from .homotopy import ExtendTag, ExtendVerdict, decide_extension
from .pl_map import (
    CriticalValue,
    Norm,
    PLMap,
    critical_values,
    global_min,
    max_vertex_norm,
    star_with_values,
)
from .reduction import (
    LevelPair,
    SphereMap,
    build_chi,
    sign_refinement,
    simplicial_approximation,
    split_level,
    vertexwise_extremal_subdivision,
)


class RobTag(Enum):
    ROBUST_YES = "RobustYes"
    ROBUST_NO = "RobustNo"
    UNKNOWN = "Unknown"


@dataclass
class RobVerdict:
    tag: RobTag
    reason: str = ""
    witness: PLMap | None = None
    extend: ExtendVerdict | None = None


class RobustnessTag(Enum):
    UNSATISFIABLE = "Unsatisfiable"
    VALUE = "Value"
    INTERVAL = "Interval"


@dataclass
class RobustnessResult:
    tag: RobustnessTag
    value: CriticalValue | None = None
    lo: CriticalValue | None = None
    hi: CriticalValue | None = None


@dataclass
class ReductionOutcome:
    """Either an early verdict or the refined pair plus its sphere map."""

    shortcut: RobVerdict | None = None
    pair: LevelPair | None = None
    fmap: SphereMap | None = None


def _coerce_alpha(alpha) -> CriticalValue:
    if isinstance(alpha, CriticalValue):
        cv = alpha
    else:
        cv = CriticalValue.rat(Fraction(alpha))
    if cv.is_zero():
        raise ValueError("alpha must be positive")
    return cv


def reduce_to_extension(f: PLMap, alpha, norm: Norm,
                        extremal: PLMap | None = None) -> ReductionOutcome:
    """Run the subdivision pipeline for one alpha.

    Short-circuits: when the sublevel part X is empty, |f| > alpha everywhere
    and f itself is a rootless perturbation of itself; when A is empty but X
    is not, the empty map extends (constantly), so the instance is again not
    robust.  `extremal` lets callers probing several alphas reuse the
    alpha-independent vertex-extremal subdivision.
    """
    if f.n < 1:
        raise ValueError("the map must have at least one component")
    alpha = _coerce_alpha(alpha)
    f1 = extremal if extremal is not None else vertexwise_extremal_subdivision(f, norm)
    chi, _ = build_chi(f1, alpha, norm)
    if all(v == 1 for v in chi.values()):
        assert not global_min(f, norm).is_zero()
        return ReductionOutcome(shortcut=RobVerdict(
            RobTag.ROBUST_NO,
            reason="|f| exceeds alpha everywhere; f is its own rootless perturbation",
            witness=f))
    pair = split_level(f1, chi, alpha, norm)
    if pair.a.is_empty():
        return ReductionOutcome(shortcut=RobVerdict(
            RobTag.ROBUST_NO,
            reason="the level subcomplex A is empty; the empty map extends"))
    pair = sign_refinement(pair)
    fmap = simplicial_approximation(pair)
    return ReductionOutcome(pair=pair, fmap=fmap)


def _verdict_from_extension(ev: ExtendVerdict) -> RobVerdict:
    if ev.tag is ExtendTag.NOT_EXTENDS:
        return RobVerdict(RobTag.ROBUST_YES, reason=ev.reason, extend=ev)
    if ev.tag is ExtendTag.EXTENDS:
        return RobVerdict(RobTag.ROBUST_NO, reason=ev.reason, extend=ev)
    return RobVerdict(RobTag.UNKNOWN, reason=ev.reason, extend=ev)


def decide_robsat(f: PLMap, alpha, norm: Norm, assume_hopf: bool = True,
                  witness_config=None, extremal: PLMap | None = None) -> RobVerdict:
    """Does every alpha-perturbation of f have a root?

    RobustYes means the sphere map on A does not extend over X; RobustNo means
    it does (or that the pair degenerates); Unknown is possible only beyond
    the decidable range (n >= 3 with dim X > n).

    >>> from robsat.complex_core import closure
    >>> from robsat.pl_map import PLMap, Norm
    >>> path = closure([[0, 1], [1, 2]])
    >>> f = PLMap(path, 1, {0: (3,), 1: (-1,), 2: (3,)})
    >>> decide_robsat(f, 1, Norm.LINF).tag.value
    'RobustYes'
    >>> decide_robsat(f, 3, Norm.LINF).tag.value
    'RobustNo'
    """
    alpha = _coerce_alpha(alpha)
    outcome = reduce_to_extension(f, alpha, norm, extremal=extremal)
    if outcome.shortcut is not None:
        verdict = outcome.shortcut
    else:
        ev = decide_extension(outcome.pair.x, outcome.pair.a, outcome.fmap,
                              f.n, assume_hopf=assume_hopf)
        verdict = _verdict_from_extension(ev)
    if verdict.tag is RobTag.ROBUST_NO and verdict.witness is None and witness_config is not None:
        from .oracles import perturbation_witness

        verdict.witness = perturbation_witness(f, alpha, witness_config, norm)
    if verdict.witness is not None:
        _validate_witness(f, verdict.witness, alpha, norm)
    return verdict


def _validate_witness(f: PLMap, g: PLMap, alpha: CriticalValue, norm: Norm) -> None:
    from .pl_map import map_distance

    if global_min(g, norm).is_zero():
        raise AssertionError("witness has a root")
    if alpha < map_distance(f, g, norm):
        raise AssertionError("witness is farther than alpha from f")


def robustness(f: PLMap, norm: Norm, assume_hopf: bool = True) -> RobustnessResult:
    """Exact robustness of the root of f.

    Unsatisfiable when f has no root at all.  Otherwise the answer is the
    largest critical value at which the decision is RobustYes (robustness is
    always a critical value, and RobustYes is downward closed in alpha: an
    alpha'-perturbation with alpha' < alpha is an alpha-perturbation).  When
    Unknown verdicts block the search, a sound enclosing interval is returned.
    """
    if f.n < 1:
        raise ValueError("the map must have at least one component")
    if not global_min(f, norm).is_zero():
        return RobustnessResult(RobustnessTag.UNSATISFIABLE)
    positive = [cv for cv in critical_values(f, norm) if not cv.is_zero()]
    zero = CriticalValue.rat(0)
    if not positive:
        return RobustnessResult(RobustnessTag.VALUE, value=zero)
    extremal = vertexwise_extremal_subdivision(f, norm)

    verdicts: dict[int, RobTag] = {}

    def decide(i: int) -> RobTag:
        if i not in verdicts:
            verdicts[i] = decide_robsat(f, positive[i], norm, assume_hopf=assume_hopf,
                                        extremal=extremal).tag
        return verdicts[i]

    lo, hi = -1, len(positive)
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        tag = decide(mid)
        if tag is RobTag.ROBUST_YES:
            lo = mid
        elif tag is RobTag.ROBUST_NO:
            hi = mid
        else:
            # Unknown at the probe: fall back to a full scan of the remaining
            # window and report the tightest confirmed bounds.
            best_yes, least_no = lo, hi
            for i in range(lo + 1, hi):
                t = decide(i)
                if t is RobTag.ROBUST_YES:
                    best_yes = max(best_yes, i)
                elif t is RobTag.ROBUST_NO:
                    least_no = min(least_no, i)
            lo_value = positive[best_yes] if best_yes >= 0 else zero
            hi_value = positive[least_no] if least_no < len(positive) else max_vertex_norm(f, norm)
            return RobustnessResult(RobustnessTag.INTERVAL, lo=lo_value, hi=hi_value)
    return RobustnessResult(RobustnessTag.VALUE,
                            value=positive[lo] if lo >= 0 else zero)


def locate_components(f: PLMap, alpha, norm: Norm, assume_hopf: bool = True):
    """Connected components of X in which every alpha-perturbation of f must
    have a root.  Returns (component vertex tuple, RobVerdict) pairs for the
    components whose restricted sphere map does not extend."""
    from .complex_core import connected_components

    alpha = _coerce_alpha(alpha)
    outcome = reduce_to_extension(f, alpha, norm)
    if outcome.shortcut is not None:
        return []
    pair, fmap = outcome.pair, outcome.fmap
    results = []
    for comp in connected_components(pair.x):
        x_i = full_subcomplex(pair.x, comp)
        a_i = full_subcomplex(pair.a, comp & set(pair.a.vertices))
        fmap_i = SphereMap(a_i, f.n, {v: fmap.image(v) for v in a_i.vertices})
        ev = decide_extension(x_i, a_i, fmap_i, f.n, assume_hopf=assume_hopf)
        if ev.tag is ExtendTag.NOT_EXTENDS:
            results.append((tuple(sorted(comp)), _verdict_from_extension(ev)))
    return results


def _split_inequality_levels(h: PLMap, n: int, alpha: Fraction) -> PLMap:
    """Star every edge on which some constraint component g_i + alpha changes
    sign strictly, at its zero; the new vertex has g_i = -alpha exactly."""
    k = h.n - n
    for i in range(n, n + k):
        while True:
            hit = None
            for e in h.complex.k_simplices(1):
                u, w = e.vertices
                a = h.value(u)[i] + alpha
                b = h.value(w)[i] + alpha
                if a * b < 0:
                    hit = (e, a, b)
                    break
            if hit is None:
                break
            e, a, b = hit
            u, w = e.vertices
            t = a / (a - b)
            h, _ = star_with_values(h, e, BaryPoint.from_dict({u: 1 - t, w: t}))
    return h


def decide_with_inequalities(f: PLMap, g: PLMap, alpha, norm: Norm = Norm.LINF,
                             assume_hopf: bool = True) -> RobVerdict:
    """Robust satisfiability of the system f = 0 and g <= 0 under the max
    norm: every alpha-perturbation of the system is satisfiable iff every
    alpha-perturbation of f restricted to U = {g <= -alpha} has a root there.

    U is triangulated exactly: after the level starrings, every simplex is
    weakly signed in each g_i + alpha, so a point satisfies g <= -alpha iff
    its barycentric support does, and U is the full subcomplex on the
    satisfying vertices.
    """
    if norm != Norm.LINF:
        raise ValueError("inequality systems are supported for the max norm only")
    alpha_cv = _coerce_alpha(alpha)
    if alpha_cv.is_sqrt:
        raise ValueError("alpha must be rational for inequality systems")
    alpha_q = alpha_cv.q
    if g.n == 0:
        return decide_robsat(f, alpha_cv, norm, assume_hopf=assume_hopf)
    if f.complex != g.complex:
        raise ValueError("f and g must live on the same complex")
    combined = PLMap(f.complex, f.n + g.n,
                     {v: f.value(v) + g.value(v) for v in f.complex.vertices})
    combined = _split_inequality_levels(combined, f.n, alpha_q)
    for s in combined.complex.simplices:
        for i in range(f.n, f.n + g.n):
            vals = [combined.value(v)[i] + alpha_q for v in s.vertices]
            assert not (any(x > 0 for x in vals) and any(x < 0 for x in vals)), \
                "inequality level splitting left a strictly mixed simplex"
    keep = {
        v for v in combined.complex.vertices
        if all(combined.value(v)[i] <= -alpha_q for i in range(f.n, f.n + g.n))
    }
    domain = full_subcomplex(combined.complex, keep)
    if domain.is_empty():
        return RobVerdict(
            RobTag.ROBUST_NO,
            reason="the constrained region {g <= -alpha} is empty")
    f_u = PLMap(domain, f.n, {v: combined.value(v)[: f.n] for v in domain.vertices})
    return decide_robsat(f_u, alpha_cv, norm, assume_hopf=assume_hopf)
