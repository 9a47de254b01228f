import random
from fractions import Fraction

import pytest

from robsat.complex_core import BaryPoint, Simplex, barycenter, closure
from robsat.pl_map import (
    EQ,
    GT,
    LT,
    CriticalValue,
    Norm,
    PLMap,
    critical_values,
    evaluate,
    global_min,
    has_root,
    map_distance,
    norm_compare,
    restrict_interpolate,
    simplex_min,
    star_with_values,
    vector_norm,
)
from robsat.oracles import grid_min_check

from helpers import path_map, random_complex, random_map, random_point_in

ALL_NORMS = [Norm.L1, Norm.L2, Norm.LINF]


class TestCriticalValue:
    def test_total_order_and_canonical_sqrt(self):
        assert CriticalValue.sqrt_of(25) == CriticalValue.rat(5)
        assert CriticalValue.rat(2) < CriticalValue.sqrt_of(5)
        assert CriticalValue.sqrt_of(5) < CriticalValue.rat(Fraction(9, 4))
        assert sorted([CriticalValue.sqrt_of(2), CriticalValue.rat(1)])[0] == CriticalValue.rat(1)

    def test_nonnegative(self):
        with pytest.raises(ValueError):
            CriticalValue.rat(-1)

    def test_scaling(self):
        assert CriticalValue.sqrt_of(2).scaled(3) == CriticalValue.sqrt_of(18)
        assert CriticalValue.rat(Fraction(1, 2)).scaled(4) == CriticalValue.rat(2)


class TestEvaluate:
    def test_vertex_point(self):
        f = path_map([0, 2])
        assert evaluate(f, BaryPoint.vertex(0)) == (0,)

    def test_edge_midpoint(self):
        f = path_map([0, 2])
        m = BaryPoint.from_dict({0: Fraction(1, 2), 1: Fraction(1, 2)})
        assert evaluate(f, m) == (1,)

    def test_triangle_barycenter(self):
        t = closure([[1, 2, 3]])
        f = PLMap(t, 2, {1: (3, 0), 2: (0, 3), 3: (0, 0)})
        assert evaluate(f, barycenter(Simplex.of([1, 2, 3]))) == (1, 1)

    def test_unsupported_point(self):
        f = path_map([0, 1, 2])
        with pytest.raises(ValueError):
            evaluate(f, BaryPoint.from_dict({0: Fraction(1, 2), 2: Fraction(1, 2)}))


class TestNormCompare:
    def test_examples(self):
        assert norm_compare((3, 4), Norm.L2, CriticalValue.rat(5)) == EQ
        assert norm_compare((1, 1), Norm.LINF, CriticalValue.rat(1)) == EQ
        assert norm_compare((1, 1), Norm.L1, CriticalValue.sqrt_of(5)) == LT
        assert norm_compare((2, 0), Norm.L1, CriticalValue.rat(1)) == GT


class TestSimplexMin:
    def test_sign_change_edge(self):
        f = path_map([-1, 1])
        pt, cv = simplex_min(f, Simplex.of([0, 1]), Norm.LINF)
        assert cv == CriticalValue.rat(0)
        assert pt.as_dict() == {0: Fraction(1, 2), 1: Fraction(1, 2)}

    def test_vertex_simplex_l2(self):
        f = PLMap(closure([[7]]), 2, {7: (3, -4)})
        _, cv = simplex_min(f, Simplex.of([7]), Norm.L2)
        assert cv == CriticalValue.rat(5)

    def test_triangle_linf(self):
        t = closure([[1, 2, 3]])
        f = PLMap(t, 2, {1: (1, 0), 2: (0, 1), 3: (1, 1)})
        pt, cv = simplex_min(f, Simplex.of([1, 2, 3]), Norm.LINF)
        assert cv == CriticalValue.rat(Fraction(1, 2))
        assert pt.as_dict() == {1: Fraction(1, 2), 2: Fraction(1, 2)}

    def test_deterministic_on_ties(self):
        # |f| constant on the edge: the lexicographically smallest argmin wins.
        f = path_map([1, 1])
        pt, cv = simplex_min(f, Simplex.of([0, 1]), Norm.LINF)
        assert cv == CriticalValue.rat(1)
        assert pt.as_dict() == {1: Fraction(1)}

    @pytest.mark.parametrize("norm", ALL_NORMS)
    def test_grid_oracle_dominates(self, norm):
        rng = random.Random(17)
        for _ in range(12):
            cx = random_complex(rng, max_dim=3, max_vertices=5, n_maximal=2)
            f = random_map(rng, cx, n=2)
            for s in cx.maximal_simplices():
                _, exact = simplex_min(f, s, norm)
                grid = grid_min_check(f, s, norm, 4)
                assert not (grid < exact)

    @pytest.mark.parametrize("norm", ALL_NORMS)
    def test_random_points_dominate_min(self, norm):
        rng = random.Random(4)
        cx = closure([[0, 1, 2, 3]])
        f = random_map(rng, cx, n=2)
        s = Simplex.of([0, 1, 2, 3])
        _, exact = simplex_min(f, s, norm)
        for _ in range(1000):
            p = random_point_in(rng, s)
            val = vector_norm(evaluate(f, p), norm)
            assert not (val < exact)

    @pytest.mark.parametrize("norm", ALL_NORMS)
    def test_face_min_dominates(self, norm):
        rng = random.Random(8)
        cx = closure([[0, 1, 2]])
        f = random_map(rng, cx, n=2)
        s = Simplex.of([0, 1, 2])
        _, whole = simplex_min(f, s, norm)
        for face in s.faces():
            _, fv = simplex_min(f, face, norm)
            assert not (fv < whole)

    @pytest.mark.parametrize("norm", ALL_NORMS)
    def test_convexity_max_at_vertex(self, norm):
        rng = random.Random(31)
        for _ in range(10):
            cx = closure([[0, 1, 2]])
            f = random_map(rng, cx, n=3)
            s = Simplex.of([0, 1, 2])
            vmax = max(vector_norm(f.value(v), norm) for v in s.vertices)
            for _ in range(100):
                p = random_point_in(rng, s)
                assert not (vmax < vector_norm(evaluate(f, p), norm))


class TestCriticalValues:
    def test_path_3_minus1_3(self):
        f = path_map([3, -1, 3])
        assert critical_values(f, Norm.LINF) == [
            CriticalValue.rat(0), CriticalValue.rat(1), CriticalValue.rat(3)]

    def test_constant(self):
        f = path_map([2, 2, 2])
        assert critical_values(f, Norm.LINF) == [CriticalValue.rat(2)]

    def test_zero_map(self):
        f = path_map([0, 0])
        assert critical_values(f, Norm.LINF) == [CriticalValue.rat(0)]

    def test_global_min_subdivision_invariant(self):
        rng = random.Random(12)
        for norm in ALL_NORMS:
            for _ in range(5):
                cx = random_complex(rng, max_dim=2, max_vertices=5, n_maximal=2)
                f = random_map(rng, cx, n=2)
                edges = cx.k_simplices(1)
                if not edges:
                    continue
                e = rng.choice(edges)
                f2, _ = star_with_values(
                    f, e, BaryPoint.from_dict({e.vertices[0]: Fraction(1, 2),
                                               e.vertices[1]: Fraction(1, 2)}))
                assert global_min(f, norm) == global_min(f2, norm)
                # the refined critical set still contains the global minimum
                assert global_min(f, norm) in critical_values(f2, norm)


class TestRootsAndDistance:
    def test_has_root_examples(self):
        assert has_root(path_map([3, -1, 3]), Norm.LINF)
        assert not has_root(path_map([2, 2, 2]), Norm.LINF)
        single = PLMap(closure([[9]]), 1, {9: (0,)})
        assert has_root(single, Norm.L1)

    def test_map_distance_is_vertexwise_max(self):
        f = path_map([0, 0, 0])
        g = path_map([1, -2, 1])
        assert map_distance(f, g, Norm.LINF) == CriticalValue.rat(2)


class TestRestrictInterpolate:
    def test_star_edge_zero(self):
        f = path_map([-1, 1])
        f2, vid = star_with_values(f, Simplex.of([0, 1]),
                                   BaryPoint.from_dict({0: Fraction(1, 2), 1: Fraction(1, 2)}))
        assert f2.value(vid) == (0,)
        assert restrict_interpolate(f, f2.complex) == f2

    def test_identity_subdivision(self):
        f = path_map([-1, 1])
        assert restrict_interpolate(f, f.complex) == f

    def test_agrees_pointwise(self):
        rng = random.Random(21)
        t = closure([[1, 2, 3]])
        f = PLMap(t, 2, {1: (3, 0), 2: (0, 3), 3: (0, 0)})
        f2, _ = star_with_values(f, Simplex.of([1, 2, 3]), barycenter(Simplex.of([1, 2, 3])))
        for _ in range(50):
            p = f.complex.expand(random_point_in(rng, Simplex.of([1, 2, 3])))
            assert evaluate(f, p) == evaluate(f2, p)
