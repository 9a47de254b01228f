"""Exact combinatorial engine for finite abstract simplicial complexes.

A complex stores every simplex (hereditarily closed) plus, for each vertex, its
exact barycentric expansion over the vertices of the complex it was originally
built from.  Subdivision never needs ambient geometry: new vertices are exact
rational convex combinations of original vertices, and piecewise-linear data
extends by linearity.

Conventions fixed here and used by every other module:

* simplices are strictly sorted vertex tuples;
* a cochain stores its value on the sorted orientation, and evaluation on an
  ordered simplex multiplies by the permutation parity;
* the coboundary is (delta c)(tau) = sum_i (-1)^i c(tau minus i-th vertex),
  vertices of tau in sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import exactlinalg

VertexId = int


def permutation_parity(seq) -> int:
    """Sign of the permutation sorting `seq` (entries distinct)."""
    seq = list(seq)
    parity = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[j] < seq[i]:
                seq[i], seq[j] = seq[j], seq[i]
                parity = -parity
    return parity


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: tuple[VertexId, ...]

    def __post_init__(self):
        v = self.vertices
        if not v:
            raise ValueError("empty simplex")
        if any(v[i] >= v[i + 1] for i in range(len(v) - 1)):
            raise ValueError(f"vertices must be strictly sorted: {v}")

    @classmethod
    def of(cls, vertices) -> "Simplex":
        vs = tuple(sorted(vertices))
        if len(set(vs)) != len(vs):
            raise ValueError(f"repeated vertex in {vertices}")
        return cls(vs)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def faces(self):
        """All nonempty faces, self included."""
        for k in range(1, len(self.vertices) + 1):
            for sub in combinations(self.vertices, k):
                yield Simplex(sub)

    def boundary(self):
        """Codimension-1 faces in deletion order: (i, face with i-th vertex removed)."""
        for i in range(len(self.vertices)):
            yield i, Simplex(self.vertices[:i] + self.vertices[i + 1:])

    def has_face(self, other: "Simplex") -> bool:
        return set(other.vertices) <= set(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class OrientedSimplex:
    simplex: Simplex
    parity: int  # +1 or -1 relative to the sorted vertex order

    @classmethod
    def from_sequence(cls, vertices) -> "OrientedSimplex":
        return cls(Simplex.of(vertices), permutation_parity(list(vertices)))

    def reversed(self) -> "OrientedSimplex":
        return OrientedSimplex(self.simplex, -self.parity)


@dataclass(frozen=True)
class BaryPoint:
    """Exact convex combination of vertices; weights positive, summing to 1."""

    weights: tuple[tuple[VertexId, Fraction], ...]

    def __post_init__(self):
        if not self.weights:
            raise ValueError("empty barycentric point")
        total = Fraction(0)
        prev = None
        for v, w in self.weights:
            if prev is not None and v <= prev:
                raise ValueError("weights must be sorted by vertex id")
            prev = v
            if w <= 0:
                raise ValueError(f"nonpositive weight {w} on vertex {v}")
            total += w
        if total != 1:
            raise ValueError(f"weights sum to {total}, expected 1")

    @classmethod
    def from_dict(cls, d) -> "BaryPoint":
        return cls(tuple(sorted((v, Fraction(w)) for v, w in d.items() if Fraction(w) != 0)))

    @classmethod
    def vertex(cls, v: VertexId) -> "BaryPoint":
        return cls(((v, Fraction(1)),))

    @property
    def support(self) -> tuple[VertexId, ...]:
        return tuple(v for v, _ in self.weights)

    def as_dict(self) -> dict[VertexId, Fraction]:
        return dict(self.weights)

    def weight(self, v: VertexId) -> Fraction:
        return dict(self.weights).get(v, Fraction(0))

    @classmethod
    def combine(cls, parts) -> "BaryPoint":
        """Convex combination of (coefficient, BaryPoint) pairs."""
        acc: dict[VertexId, Fraction] = {}
        for coeff, point in parts:
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            for v, w in point.weights:
                acc[v] = acc.get(v, Fraction(0)) + coeff * w
        return cls.from_dict(acc)


class Complex:
    """Finite abstract simplicial complex, immutable after construction.

    `coords` maps every vertex to its barycentric expansion over the original
    vertex set; original vertices map to themselves.
    """

    __slots__ = ("_simplices", "_coords", "_by_dim", "_vertices")

    def __init__(self, simplices, coords):
        self._simplices = frozenset(simplices)
        self._coords = dict(coords)
        by_dim: dict[int, list[Simplex]] = {}
        verts = set()
        for s in self._simplices:
            by_dim.setdefault(s.dim, []).append(s)
            verts.update(s.vertices)
        for k in by_dim:
            by_dim[k].sort()
        self._by_dim = by_dim
        self._vertices = tuple(sorted(verts))
        missing = verts - set(self._coords)
        if missing:
            raise ValueError(f"vertices without coordinates: {sorted(missing)}")

    # -- basic queries ----------------------------------------------------

    @property
    def simplices(self) -> frozenset[Simplex]:
        return self._simplices

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return self._vertices

    @property
    def dim(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    def coord(self, v: VertexId) -> BaryPoint:
        return self._coords[v]

    @property
    def coords(self) -> dict[VertexId, BaryPoint]:
        return dict(self._coords)

    def k_simplices(self, k: int) -> list[Simplex]:
        return list(self._by_dim.get(k, []))

    def __contains__(self, s: Simplex) -> bool:
        return s in self._simplices

    def __len__(self) -> int:
        return len(self._simplices)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Complex)
            and self._simplices == other._simplices
            and self._coords == other._coords
        )

    def __hash__(self) -> int:
        return hash(self._simplices)

    def __repr__(self) -> str:
        return f"Complex({len(self._simplices)} simplices, dim {self.dim})"

    def is_empty(self) -> bool:
        return not self._simplices

    def cofaces(self, s: Simplex) -> list[Simplex]:
        """All simplices having s as a face, s included."""
        sv = set(s.vertices)
        return sorted(t for t in self._simplices if sv <= set(t.vertices))

    def fresh_vertex_id(self) -> VertexId:
        return (max(self._coords) + 1) if self._coords else 0

    def maximal_simplices(self) -> list[Simplex]:
        out = []
        for s in sorted(self._simplices, key=lambda x: (-x.dim, x.vertices)):
            sv = set(s.vertices)
            if not any(sv < set(t.vertices) for t in out):
                out.append(s)
        return sorted(out)

    # -- geometry through barycentric lineage ------------------------------

    def expand(self, point: BaryPoint) -> BaryPoint:
        """Re-express a point given over current vertices in original coordinates."""
        return BaryPoint.combine((w, self._coords[v]) for v, w in point.weights)

    def local_coordinates(self, s: Simplex, target: BaryPoint):
        """Barycentric coordinates of `target` (original coords) within simplex s.

        Returns the weight dict over s's vertices, or None when target is not
        in the closed hull of s.
        """
        ids = sorted({v for vert in s.vertices for v, _ in self._coords[vert].weights}
                     | set(target.support))
        rows = []
        rhs = []
        for oid in ids:
            rows.append([self._coords[vert].weight(oid) for vert in s.vertices])
            rhs.append(target.weight(oid))
        rows.append([Fraction(1)] * len(s.vertices))
        rhs.append(Fraction(1))
        sol, _ = exactlinalg.solve(rows, rhs)
        if sol is None or any(x < 0 for x in sol):
            return None
        return {vert: x for vert, x in zip(s.vertices, sol) if x != 0}

    def locate(self, target: BaryPoint):
        """Find a simplex whose hull contains `target` (original coordinates).

        Returns (simplex, local weight dict) or None. Deterministic: maximal
        simplices are scanned in sorted order.
        """
        support = set(target.support)
        for s in self.maximal_simplices():
            carrier = {v for vert in s.vertices for v, _ in self._coords[vert].weights}
            if not support <= carrier:
                continue
            local = self.local_coordinates(s, target)
            if local is not None:
                return s, local
        return None

    def contains_point(self, target: BaryPoint) -> bool:
        return self.locate(target) is not None


def _identity_coords(vertex_ids):
    return {v: BaryPoint.vertex(v) for v in vertex_ids}


def closure(simplices, coords=None) -> Complex:
    """Hereditary closure of the given simplices."""
    all_faces: set[Simplex] = set()
    verts: set[VertexId] = set()
    for s in simplices:
        if not isinstance(s, Simplex):
            s = Simplex.of(s)
        all_faces.update(s.faces())
        verts.update(s.vertices)
    if coords is None:
        coords = _identity_coords(verts)
    else:
        coords = {v: coords[v] for v in verts}
    return Complex(all_faces, coords)


def empty_complex() -> Complex:
    return Complex(frozenset(), {})


def star_link(c: Complex, s: Simplex) -> tuple[Complex, Complex]:
    """Star and link of a simplex: faces of simplices meeting s, and the
    members of the star disjoint from s."""
    if s not in c:
        raise ValueError(f"simplex {s} not in complex")
    sv = set(s.vertices)
    star_set: set[Simplex] = set()
    for t in c.simplices:
        if sv & set(t.vertices):
            star_set.update(t.faces())
    link_set = {t for t in star_set if not (set(t.vertices) & sv)}
    star_verts = {v for t in star_set for v in t.vertices}
    link_verts = {v for t in link_set for v in t.vertices}
    star = Complex(star_set, {v: c.coord(v) for v in star_verts})
    link = Complex(link_set, {v: c.coord(v) for v in link_verts})
    return star, link


def star_vertices(c: Complex, v: VertexId) -> tuple[VertexId, ...]:
    """Vertices of star({v}) in c."""
    out = set()
    for t in c.simplices:
        if v in t.vertices:
            out.update(t.vertices)
    return tuple(sorted(out))


def star_at_point(c: Complex, carrier: Simplex, point: BaryPoint) -> tuple[Complex, VertexId]:
    """Starring subdivision: replace `carrier` and its cofaces by cones over a
    new vertex placed at `point`.

    `point` is given in carrier-local barycentric coordinates and must be
    interior (positive weight on every carrier vertex). The stored coordinate
    of the new vertex is the expansion over original vertices, so lineage
    composes across repeated subdivision.
    """
    if carrier not in c:
        raise ValueError(f"carrier {carrier} not in complex")
    if set(point.support) != set(carrier.vertices):
        raise ValueError("point must be interior to the carrier (full support)")
    new_id = c.fresh_vertex_id()
    new_coord = c.expand(point)

    carrier_set = set(carrier.vertices)
    removed = [t for t in c.simplices if carrier_set <= set(t.vertices)]
    kept = set(c.simplices) - set(removed)
    added: set[Simplex] = set()
    for t in removed:
        rest = tuple(v for v in t.vertices if v not in carrier_set)
        # proper faces of the carrier, empty face included
        for k in range(len(carrier.vertices)):
            for fc in combinations(carrier.vertices, k):
                for rk in range(len(rest) + 1):
                    for rc in combinations(rest, rk):
                        added.add(Simplex.of((new_id,) + fc + rc))
    coords = c.coords
    coords[new_id] = new_coord
    return Complex(kept | added, coords), new_id


def derived_subdivision(c: Complex, pick) -> Complex:
    """Star every simplex with an assigned interior point, largest dimension
    first.  `pick` maps a Simplex to a carrier-local BaryPoint or None."""
    chosen = []
    for s in sorted(c.simplices, key=lambda x: (-x.dim, x.vertices)):
        p = pick(s)
        if p is not None:
            chosen.append((s, p))
    out = c
    for s, p in chosen:
        out, _ = star_at_point(out, s, p)
    return out


def full_subcomplex(c: Complex, keep) -> Complex:
    """Simplices all of whose vertices satisfy `keep` (a predicate or a set)."""
    if not callable(keep):
        keep_set = set(keep)
        keep = keep_set.__contains__
    simplices = {s for s in c.simplices if all(keep(v) for v in s.vertices)}
    verts = {v for s in simplices for v in s.vertices}
    return Complex(simplices, {v: c.coord(v) for v in verts})


def barycenter(s: Simplex) -> BaryPoint:
    w = Fraction(1, len(s.vertices))
    return BaryPoint(tuple((v, w) for v in s.vertices))


def make_full(x: Complex, a: Complex) -> tuple[Complex, Complex]:
    """Subdivide x so that a becomes a full subcomplex; a itself is untouched.

    Every simplex of x that is not in a but has all vertices in V(a) is starred
    at its barycenter, in decreasing dimension.  New vertices fall outside V(a),
    so each starring removes one violation and introduces none.
    """
    if not a.simplices <= x.simplices:
        raise ValueError("a must be a subcomplex of x")
    a_verts = set(a.vertices)
    violations = [
        s for s in x.simplices
        if s not in a.simplices and set(s.vertices) <= a_verts
    ]
    violations.sort(key=lambda s: (-s.dim, s.vertices))
    out = x
    for s in violations:
        out, _ = star_at_point(out, s, barycenter(s))
    return out, a


def connected_components(c: Complex) -> list[set[VertexId]]:
    """Vertex sets of connected components, ordered by smallest member."""
    adjacency: dict[VertexId, set[VertexId]] = {v: set() for v in c.vertices}
    for e in c.k_simplices(1):
        u, v = e.vertices
        adjacency[u].add(v)
        adjacency[v].add(u)
    seen: set[VertexId] = set()
    components = []
    for v in c.vertices:
        if v in seen:
            continue
        comp = {v}
        frontier = [v]
        while frontier:
            u = frontier.pop()
            for w in adjacency[u]:
                if w not in comp:
                    comp.add(w)
                    frontier.append(w)
        seen |= comp
        components.append(comp)
    components.sort(key=min)
    return components


def coboundary(c: Complex, k: int):
    """Integer matrix of delta: C^k -> C^(k+1).

    Returns (rows, row_index, col_index) where row_index lists the (k+1)-
    simplices and col_index the k-simplices, both sorted.
    """
    cols = c.k_simplices(k)
    rows_ix = c.k_simplices(k + 1)
    col_pos = {s: j for j, s in enumerate(cols)}
    rows = []
    for tau in rows_ix:
        row = [0] * len(cols)
        for i, face in tau.boundary():
            j = col_pos.get(face)
            if j is not None:
                row[j] += (-1) ** i
        rows.append(row)
    return rows, rows_ix, cols


@dataclass
class IntCochain:
    """Integer k-cochain; values are stored on the sorted orientation."""

    degree: int
    values: dict[Simplex, int] = field(default_factory=dict)

    def __post_init__(self):
        self.values = {s: v for s, v in self.values.items() if v != 0}
        for s in self.values:
            if s.dim != self.degree:
                raise ValueError(f"simplex {s} has dim {s.dim}, cochain degree {self.degree}")

    def __call__(self, s) -> int:
        if isinstance(s, OrientedSimplex):
            return s.parity * self.values.get(s.simplex, 0)
        return self.values.get(s, 0)

    def __neg__(self) -> "IntCochain":
        return IntCochain(self.degree, {s: -v for s, v in self.values.items()})

    def __add__(self, other: "IntCochain") -> "IntCochain":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        vals = dict(self.values)
        for s, v in other.values.items():
            vals[s] = vals.get(s, 0) + v
        return IntCochain(self.degree, vals)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntCochain)
            and self.degree == other.degree
            and self.values == other.values
        )


def apply_coboundary(c: Complex, cochain: IntCochain) -> IntCochain:
    """delta(cochain) on the (degree+1)-simplices of c."""
    out: dict[Simplex, int] = {}
    for tau in c.k_simplices(cochain.degree + 1):
        acc = 0
        for i, face in tau.boundary():
            acc += (-1) ** i * cochain(face)
        if acc:
            out[tau] = acc
    return IntCochain(cochain.degree + 1, out)


def chain_boundary(c: Complex, chain: IntCochain) -> IntCochain:
    """Boundary of an integer chain (stored in the same container as cochains)."""
    out: dict[Simplex, int] = {}
    for s, coeff in chain.values.items():
        for i, face in s.boundary():
            out[face] = out.get(face, 0) + (-1) ** i * coeff
    return IntCochain(chain.degree - 1, out)
