"""Convex polytopes at desk scale (ambient dimension <= 4, <= ~40 facets).

Vertex and facet enumeration are brute force over affinely determining
subsets; correctness over speed.  Lower-dimensional polytopes (flat
sections, segments, faces) are first class: each polytope records its
affine hull as an origin plus orthonormal frame, keeps its facet
description in intrinsic coordinates, and contributes the orthogonal
complement of its hull to every normal cone.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .symtensor import SymTensor, vector_power

__all__ = [
    "GeometryError",
    "EmptyPolytopeError",
    "GrazingIntersectionError",
    "Polytope",
    "Face",
    "Cone",
    "Region",
    "intersect_flat",
    "triangulate",
    "simplex_moment",
    "polytope_moment",
    "cube",
    "simplex",
    "cross_polytope",
    "random_polytope",
    "builtin_polytope",
    "GEOM_TOL",
]

GEOM_TOL = 1e-9
_COND_GUARD = 1e12


class GeometryError(ValueError):
    pass


class EmptyPolytopeError(GeometryError):
    pass


class GrazingIntersectionError(GeometryError):
    """A flat meets the polytope only in a degenerate (lower-dimensional)
    set; callers reject and resample such positions."""


def _dedupe_points(points, tol):
    out = []
    for p in points:
        if not any(np.max(np.abs(p - q)) <= tol for q in out):
            out.append(p)
    return np.array(out) if out else np.zeros((0, points.shape[1]))


def _affine_frame(points, tol):
    """Origin, orthonormal frame of the affine hull, and its dimension."""
    p0 = points.mean(axis=0)
    centered = points - p0
    if len(points) == 1:
        return p0, np.zeros((points.shape[1], 0)), 0
    u, sv, _ = np.linalg.svd(centered, full_matrices=False)
    scale = max(1.0, float(np.max(np.abs(points))))
    d = int(np.sum(sv > tol * scale * 10))
    _, _, vt = np.linalg.svd(centered, full_matrices=True)
    return p0, vt[:d].T, d


def _affine_rank(points, tol):
    if len(points) <= 1:
        return 0
    centered = points - points.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    scale = max(1.0, float(np.max(np.abs(points))))
    return int(np.sum(sv > tol * scale * 10))


def _orth_complement(frame, n):
    """Orthonormal basis of the orthogonal complement of the column span."""
    d = frame.shape[1]
    if d == n:
        return np.zeros((n, 0))
    proj = np.eye(n) - frame @ frame.T
    u, _, _ = np.linalg.svd(proj)
    return u[:, : n - d]


class Polytope:
    """Bounded convex polytope, possibly lower-dimensional in its ambient
    space.  Immutable after construction; derived data is cached."""

    def __init__(self, vertices, origin, frame, halfspaces_A, halfspaces_b, tol=GEOM_TOL):
        self.vertices = np.asarray(vertices, dtype=float)
        self.origin = np.asarray(origin, dtype=float)
        self.frame = np.asarray(frame, dtype=float)
        self.A = np.asarray(halfspaces_A, dtype=float)      # intrinsic facet normals
        self.b = np.asarray(halfspaces_b, dtype=float)      # intrinsic facet offsets
        self.tol = tol
        self.scale = max(1.0, float(np.max(np.abs(self.vertices))) if len(self.vertices) else 1.0)
        self.intrinsic = (self.vertices - self.origin) @ self.frame
        if self.A.size:
            self.incidence = np.abs(self.intrinsic @ self.A.T - self.b) <= 100 * tol * self.scale
        else:
            self.incidence = np.zeros((len(self.vertices), 0), dtype=bool)
        self._face_sets = None
        self._cone_moment_cache = {}

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_vertices(points, tol=GEOM_TOL):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if points.size == 0:
            raise EmptyPolytopeError("no vertices given")
        n = points.shape[1]
        scale = max(1.0, float(np.max(np.abs(points))))
        points = _dedupe_points(points, 100 * tol * scale)
        p0, U, d = _affine_frame(points, tol)
        X = (points - p0) @ U
        A, b = _facets_brute_force(X, tol)
        if d >= 1 and len(A):
            on = np.sum(np.abs(X @ A.T - b) <= 100 * tol * scale, axis=1)
            keep = on >= d
            points, X = points[keep], X[keep]
        return Polytope(points, p0, U, A, b, tol)

    @staticmethod
    def from_halfspaces(A, b, tol=GEOM_TOL):
        """Full-dimensional polytope in R^d from inequalities A x <= b."""
        A = np.asarray(A, dtype=float)
        b = np.asarray(b, dtype=float)
        verts = _vertices_brute_force(A, b, tol)
        if len(verts) == 0:
            raise EmptyPolytopeError("halfspace intersection is empty")
        return Polytope.from_vertices(verts, tol)

    # -- basic queries ---------------------------------------------------

    @property
    def dim(self):
        return self.vertices.shape[1]

    @property
    def aff_dim(self):
        return self.frame.shape[1]

    @property
    def complement_basis(self):
        return _orth_complement(self.frame, self.dim)

    def ambient_halfspaces(self):
        """(A, b) with P = {x : A x <= b}; only for full-dimensional P."""
        if self.aff_dim != self.dim:
            raise GeometryError("ambient halfspaces require a full-dimensional polytope")
        A = self.A @ self.frame.T
        b = self.b + A @ self.origin
        return A, b

    def contains(self, x):
        """Membership test (vectorized over rows of x)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        y = (x - self.origin)
        ok = np.ones(len(x), dtype=bool)
        if self.aff_dim < self.dim:
            resid = y - (y @ self.frame) @ self.frame.T
            ok &= np.max(np.abs(resid), axis=1) <= 100 * self.tol * self.scale
        if self.A.size:
            ok &= np.all((y @ self.frame) @ self.A.T <= self.b + 100 * self.tol * self.scale, axis=1)
        return ok

    def circumdata(self):
        c = self.vertices.mean(axis=0)
        r = float(np.max(np.linalg.norm(self.vertices - c, axis=1)))
        return c, r

    def volume(self):
        """Intrinsic aff_dim-volume."""
        return sum(_simplex_volume(s) for s in triangulate(self))

    # -- transforms ------------------------------------------------------

    def transformed(self, rho=None, t=None):
        """Apply x -> rho x + t, reusing the facet combinatorics."""
        n = self.dim
        rho = np.eye(n) if rho is None else np.asarray(rho, dtype=float)
        t = np.zeros(n) if t is None else np.asarray(t, dtype=float)
        return Polytope(self.vertices @ rho.T + t, rho @ self.origin + t,
                        rho @ self.frame, self.A, self.b, self.tol)

    def scaled(self, lam):
        return Polytope(lam * self.vertices, lam * self.origin, self.frame,
                        self.A, lam * self.b, self.tol)

    # -- faces and normal cones ------------------------------------------

    def _face_vertex_sets(self):
        """All proper nonempty faces as vertex-index frozensets: the closure
        of the facet sets under intersection."""
        if self._face_sets is None:
            facet_sets = [frozenset(np.nonzero(self.incidence[:, f])[0]) for f in range(len(self.b))]
            found = set(fs for fs in facet_sets if fs)
            frontier = set(found)
            while frontier:
                new = set()
                for fs in frontier:
                    for gs in facet_sets:
                        h = fs & gs
                        if h and h not in found:
                            new.add(h)
                found |= new
                frontier = new
            self._face_sets = found
        return self._face_sets

    def faces(self, j):
        """All j-dimensional faces; faces(aff_dim) is the polytope itself."""
        d = self.aff_dim
        if j < 0 or j > d:
            return []
        if j == d:
            return [self._make_face(tuple(range(len(self.vertices))))]
        if j == 0:
            return [self._make_face((i,)) for i in range(len(self.vertices))]
        out = []
        for fs in sorted(self._face_vertex_sets(), key=sorted):
            idx = tuple(sorted(fs))
            if _affine_rank(self.vertices[list(idx)], self.tol) == j:
                out.append(self._make_face(idx))
        return out

    def _make_face(self, idx):
        pts = self.vertices[list(idx)]
        p0, U, d = _affine_frame(pts, self.tol)
        return Face(j=d, vertex_indices=idx, vertices=pts, frame=U, point=p0)

    def normal_cone(self, face):
        """Ambient normal cone at `face`: generated by the outer normals of
        the facets containing the face, plus the orthogonal complement of
        the affine hull when the polytope is lower-dimensional."""
        tight = np.all(self.incidence[list(face.vertex_indices)], axis=0) if self.A.size else \
            np.zeros(0, dtype=bool)
        gens = [self.frame @ self.A[f] for f in np.nonzero(tight)[0]]
        W = self.complement_basis
        for i in range(W.shape[1]):
            gens.append(W[:, i])
            gens.append(-W[:, i])
        gens = np.array(gens) if gens else np.zeros((0, self.dim))
        if len(gens):
            gens = gens / np.linalg.norm(gens, axis=1)[:, None]
            u, sv, _ = np.linalg.svd(gens.T, full_matrices=False)
            dlin = int(np.sum(sv > 1e-10))
            lin = u[:, :dlin]
        else:
            lin = np.zeros((self.dim, 0))
        return Cone(generators=gens, lin_frame=lin, apex_point=face.point,
                    parent_vertices=self.vertices, tol=100 * self.tol * self.scale)

    # -- set operations --------------------------------------------------

    def intersect_region(self, region):
        """P intersected with a Region; returns None when empty."""
        if region.is_universe:
            return self
        Ar = region.A @ self.frame
        br = region.b - region.A @ self.origin
        d = self.aff_dim
        if d == 0:
            ok = np.all(region.A @ self.vertices[0] <= region.b + 100 * self.tol * self.scale)
            return self if ok else None
        A = np.vstack([self.A, Ar])
        b = np.concatenate([self.b, br])
        verts = _vertices_brute_force(A, b, self.tol)
        if len(verts) == 0:
            return None
        ambient = self.origin + verts @ self.frame.T
        try:
            return Polytope.from_vertices(ambient, self.tol)
        except EmptyPolytopeError:
            return None

    # -- serialization ---------------------------------------------------

    def to_json(self):
        obj = {"dim": self.dim, "vertices": self.vertices.tolist()}
        if self.aff_dim == self.dim:
            A, b = self.ambient_halfspaces()
            obj["halfspaces"] = [{"normal": a.tolist(), "offset": float(o)} for a, o in zip(A, b)]
        return obj

    @staticmethod
    def from_json(obj, tol=GEOM_TOL):
        return Polytope.from_vertices(np.asarray(obj["vertices"], dtype=float), tol)


@dataclass(frozen=True)
class Face:
    j: int
    vertex_indices: tuple
    vertices: np.ndarray
    frame: np.ndarray           # ambient orthonormal frame of the direction space
    point: np.ndarray           # relative interior point

    def key(self):
        return self.vertex_indices


@dataclass(frozen=True)
class Cone:
    """Finitely generated cone with apex at the origin; membership is
    decided against the parent polytope's vertices, u in N iff
    <u, v - x0> <= tol for every vertex v."""

    generators: np.ndarray
    lin_frame: np.ndarray
    apex_point: np.ndarray
    parent_vertices: np.ndarray
    tol: float

    @property
    def lin_dim(self):
        return self.lin_frame.shape[1]

    def contains(self, u):
        u = np.atleast_2d(np.asarray(u, dtype=float))
        diffs = self.parent_vertices - self.apex_point
        return np.max(u @ diffs.T, axis=1) <= self.tol


class Region:
    """Observation window beta: either the whole space or a convex
    H-polyhedron {x : A x <= b}."""

    def __init__(self, A=None, b=None):
        if A is None:
            self.A = None
            self.b = None
        else:
            self.A = np.atleast_2d(np.asarray(A, dtype=float))
            self.b = np.atleast_1d(np.asarray(b, dtype=float))

    @property
    def is_universe(self):
        return self.A is None

    @staticmethod
    def universe():
        return Region()

    @staticmethod
    def box(lo, hi):
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        n = len(lo)
        A = np.vstack([np.eye(n), -np.eye(n)])
        b = np.concatenate([hi, -lo])
        return Region(A, b)

    def contains(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if self.is_universe:
            return np.ones(len(x), dtype=bool)
        return np.all(x @ self.A.T <= self.b + 1e-9, axis=1)

    def transformed(self, rho=None, t=None):
        if self.is_universe:
            return self
        n = self.A.shape[1]
        rho = np.eye(n) if rho is None else np.asarray(rho, dtype=float)
        t = np.zeros(n) if t is None else np.asarray(t, dtype=float)
        A = self.A @ rho.T
        return Region(A, self.b + A @ t)

    def scaled(self, lam):
        if self.is_universe:
            return self
        return Region(self.A, lam * self.b)

    def to_json(self):
        if self.is_universe:
            return {"universe": True}
        return {"halfspaces": [{"normal": a.tolist(), "offset": float(o)}
                               for a, o in zip(self.A, self.b)]}

    @staticmethod
    def from_json(obj):
        if obj.get("universe"):
            return Region.universe()
        hs = obj["halfspaces"]
        return Region([h["normal"] for h in hs], [h["offset"] for h in hs])


# -- brute-force enumeration ------------------------------------------------

def _facets_brute_force(X, tol):
    """Facets of a full-dimensional polytope in R^d given its vertices, by
    supporting-hyperplane search over all d-subsets."""
    m, d = X.shape
    if d == 0:
        return np.zeros((0, 0)), np.zeros(0)
    scale = max(1.0, float(np.max(np.abs(X))))
    if d == 1:
        lo, hi = float(np.min(X[:, 0])), float(np.max(X[:, 0]))
        return np.array([[1.0], [-1.0]]), np.array([hi, -lo])
    facets = []
    for idx in itertools.combinations(range(m), d):
        pts = X[list(idx)]
        M = pts[1:] - pts[0]
        _, sv, vt = np.linalg.svd(M, full_matrices=True)
        if np.sum(sv > 1e-8 * scale) < d - 1:  # points do not span a hyperplane
            continue
        a = vt[-1]
        h = float(a @ pts[0])
        side = X @ a - h
        if np.max(side) <= 100 * tol * scale:
            cand = (a, h)
        elif np.min(side) >= -100 * tol * scale:
            cand = (-a, -h)
        else:
            continue
        if not any(np.max(np.abs(cand[0] - a2)) <= 1e-7 and abs(cand[1] - h2) <= 1e-7 * scale
                   for a2, h2 in facets):
            facets.append(cand)
    if not facets:
        raise GeometryError("facet enumeration failed (degenerate vertex set)")
    A = np.array([f[0] for f in facets])
    b = np.array([f[1] for f in facets])
    return A, b


def _vertices_brute_force(A, b, tol):
    """Vertices of {x : A x <= b} in R^d by solving all d-subsets."""
    f, d = A.shape
    scale = max(1.0, float(np.max(np.abs(b))) if len(b) else 1.0)
    if d == 1:
        pos = A[:, 0] > tol
        neg = A[:, 0] < -tol
        degenerate = ~pos & ~neg
        if np.any(b[degenerate] < -100 * tol * scale):
            return np.zeros((0, 1))
        hi = np.min(b[pos] / A[pos, 0]) if np.any(pos) else None
        lo = np.max(b[neg] / A[neg, 0]) if np.any(neg) else None
        if hi is None or lo is None:
            raise GeometryError("unbounded 1-d halfspace intersection")
        if lo > hi + 100 * tol * scale:
            return np.zeros((0, 1))
        return _dedupe_points(np.array([[lo], [hi]]), 100 * tol * scale)
    cand = []
    for idx in itertools.combinations(range(f), d):
        M = A[list(idx)]
        sv = np.linalg.svd(M, compute_uv=False)
        if sv[-1] <= sv[0] / _COND_GUARD or sv[-1] <= 1e-12:
            continue
        x = np.linalg.solve(M, b[list(idx)])
        if np.all(A @ x <= b + 100 * tol * max(scale, np.max(np.abs(x)))):
            cand.append(x)
    if not cand:
        return np.zeros((0, d))
    return _dedupe_points(np.array(cand), 1e-7 * max(scale, 1.0))


# -- flat sections ----------------------------------------------------------

def intersect_flat(P, B, q, tol=GEOM_TOL):
    """Intersection of a full-dimensional polytope with the affine k-flat
    {q + B y}, returned as an ambient (lower-dimensional) Polytope.

    Returns None for an empty intersection; raises
    GrazingIntersectionError when the section is nonempty but degenerate
    (dimension below k), which callers treat as a rejected sample.
    """
    B = np.asarray(B, dtype=float)
    q = np.asarray(q, dtype=float)
    k = B.shape[1]
    A_amb, b_amb = P.ambient_halfspaces()
    A = A_amb @ B
    b = b_amb - A_amb @ q
    verts = _vertices_brute_force(A, b, tol)
    if len(verts) == 0:
        return None
    ambient = q + verts @ B.T
    poly = Polytope.from_vertices(ambient, tol)
    if poly.aff_dim < k:
        raise GrazingIntersectionError(f"flat meets polytope in dimension {poly.aff_dim} < {k}")
    scale = max(1.0, float(np.max(np.abs(ambient))))
    resid = np.abs(ambient @ A_amb.T - b_amb)
    if np.any(np.max(resid, axis=0) <= 100 * tol * scale):
        raise GrazingIntersectionError("flat is tangent to a facet")
    return poly


# -- triangulation and exact monomial moments -------------------------------

def _simplex_volume(verts):
    verts = np.asarray(verts, dtype=float)
    j = len(verts) - 1
    if j == 0:
        return 1.0
    G = verts[1:] - verts[0]
    gram = G @ G.T
    det = float(np.linalg.det(gram))
    if det <= 0.0:
        return 0.0
    return math.sqrt(det) / math.factorial(j)


def triangulate(P):
    """Fan triangulation of a convex polytope into aff_dim-simplices, each
    returned as an array of aff_dim + 1 ambient vertices."""
    d = P.aff_dim
    if d == 0:
        return [P.vertices[:1]]
    if d == 1:
        return [P.vertices[:2]] if len(P.vertices) >= 2 else []
    v0_idx = 0
    v0 = P.vertices[v0_idx]
    scale = max(1.0, float(np.max(np.abs(P.vertices))))
    out = []
    for f in range(len(P.b)):
        members = np.nonzero(P.incidence[:, f])[0]
        if v0_idx in members:
            continue
        sub = Polytope.from_vertices(P.vertices[members], P.tol)
        for s in triangulate(sub):
            simplex = np.vstack([[v0], s])
            if _simplex_volume(simplex) > 1e-12 * scale ** d:
                out.append(simplex)
    return out


def simplex_moment(verts, r):
    """Exact monomial moment of a j-simplex: the rank-r tensor with
    polynomial y -> integral over the simplex of <x, y>^r dH^j(x).

    Uses the barycentric formula: the integral of lambda^a over the
    simplex is j! vol (prod a_i!) / (j + |a|)!.
    """
    verts = np.asarray(verts, dtype=float)
    j = len(verts) - 1
    n = verts.shape[1]
    vol = _simplex_volume(verts)
    out = SymTensor.zero(n, r)
    if vol == 0.0:
        return out
    # sum over compositions a of r into j+1 parts of prod v_i^{a_i};
    # the multinomial(r; a) of the expansion cancels the prod a_i! of the
    # barycentric integral, leaving the constant r! j! vol / (j + r)!.
    const = math.factorial(r) * math.factorial(j) * vol / math.factorial(j + r)
    for a in _compositions(r, j + 1):
        term = SymTensor.scalar(n, 1.0)
        for vi, ai in zip(verts, a):
            if ai:
                term = term * vector_power(vi, ai)
        out = out + term
    return out.scale(const)


def _compositions(r, parts):
    if parts == 1:
        yield (r,)
        return
    for head in range(r + 1):
        for tail in _compositions(r - head, parts - 1):
            yield (head,) + tail


def polytope_moment(P, r, region=None):
    """Integral of x^r over P intersected with `region`, as a rank-r tensor."""
    region = Region.universe() if region is None else region
    clipped = P.intersect_region(region)
    if clipped is None:
        return SymTensor.zero(P.dim, r)
    out = SymTensor.zero(P.dim, r)
    for s in triangulate(clipped):
        out = out + simplex_moment(s, r)
    return out


# -- built-ins --------------------------------------------------------------

def cube(n, low=0.0, high=1.0):
    pts = np.array(list(itertools.product([low, high], repeat=n)), dtype=float)
    return Polytope.from_vertices(pts)


def simplex(n):
    pts = np.vstack([np.zeros(n), np.eye(n)])
    return Polytope.from_vertices(pts)


def cross_polytope(n):
    pts = np.vstack([np.eye(n), -np.eye(n)])
    return Polytope.from_vertices(pts)


def random_polytope(n, npoints=10, seed=0, scale=1.0):
    rng = np.random.default_rng(seed)
    pts = scale * rng.standard_normal((npoints, n))
    return Polytope.from_vertices(pts)


def builtin_polytope(name):
    """Named generators used by the CLI: cube2, cube3, simplex3,
    cross3, random3-<seed>, ..."""
    import re
    m = re.fullmatch(r"(cube|simplex|cross|random)(\d)(?:-(\d+))?", name)
    if not m:
        raise GeometryError(f"unknown built-in polytope {name!r}")
    kind, n, seed = m.group(1), int(m.group(2)), m.group(3)
    if kind == "cube":
        return cube(n)
    if kind == "simplex":
        return simplex(n)
    if kind == "cross":
        return cross_polytope(n)
    return random_polytope(n, seed=int(seed or 0))
