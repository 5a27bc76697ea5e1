"""Barycentric/Cartesian engine for n-simplices.

A simplex is described either by vertex coordinates or by its table of
pairwise edge lengths; the two views are kept consistent on every model.
Distances between barycentric points are evaluated directly from the edge
lengths, so all metric quantities are available without ever leaving
barycentric coordinates:

    d^2(P, Q) = - sum_{i<j} d_ij^2 (p_i - q_i)(p_j - q_j)

for normalized coordinate vectors p, q.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AtInfinity,
    Degenerate,
    NotEmbeddable,
    OnSideplane,
    PointAtInfinity,
)

# Relative tolerance used for "is effectively zero" decisions on coordinate
# sums, coordinates and volumes.  Chosen two orders above double epsilon.
_REL_EPS = 1e-13


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


# ---------------------------------------------------------------------------
# volumes from squared distances (Cayley-Menger) and from coordinates (Gram)
# ---------------------------------------------------------------------------

def cayley_menger_det(sq_dist: np.ndarray) -> float:
    """Determinant of the bordered squared-distance matrix."""
    m = sq_dist.shape[0]
    cm = np.ones((m + 1, m + 1))
    cm[0, 0] = 0.0
    cm[1:, 1:] = sq_dist
    return float(np.linalg.det(cm))


def squared_volume_from_distances(dist: np.ndarray) -> float:
    """Squared k-volume of a simplex given its (k+1)x(k+1) distance matrix.

    May be negative for non-embeddable data; callers decide how to treat
    the sign.
    """
    k = dist.shape[0] - 1
    cm = cayley_menger_det(np.asarray(dist, float) ** 2)
    return (-1) ** (k + 1) * cm / (2 ** k * math.factorial(k) ** 2)


def volume_from_distances(dist: np.ndarray) -> float:
    """k-volume of a simplex from its distance matrix (0 if degenerate)."""
    return math.sqrt(max(squared_volume_from_distances(dist), 0.0))


def simplex_volume(points: np.ndarray) -> float:
    """k-volume of the simplex spanned by k+1 Cartesian points (Gram route)."""
    points = np.asarray(points, float)
    edges = points[1:] - points[0]
    k = edges.shape[0]
    if k == 0:
        return 0.0
    gram = edges @ edges.T
    return math.sqrt(max(float(np.linalg.det(gram)), 0.0)) / math.factorial(k)


def facet_volumes_of_points(points: np.ndarray) -> np.ndarray:
    """(k-1)-volumes of all facets of the simplex on the given points.

    Entry i is the volume of the facet obtained by dropping point i.
    Vectorized so the pedal iteration can call it in a tight loop.
    """
    points = np.asarray(points, float)
    m = points.shape[0]
    if m == 2:
        return np.array([1.0, 1.0])  # facets of a segment are points
    keep = np.array([[j for j in range(m) if j != i] for i in range(m)])
    facets = points[keep]                       # (m, m-1, dim)
    edges = facets[:, 1:, :] - facets[:, :1, :]  # (m, m-2, dim)
    gram = edges @ edges.transpose(0, 2, 1)
    dets = np.linalg.det(gram)
    return np.sqrt(np.clip(dets, 0.0, None)) / math.factorial(m - 2)


# ---------------------------------------------------------------------------
# edge length table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeLengthTable:
    """Symmetric table of pairwise vertex distances of an n-simplex."""

    n: int
    d: np.ndarray  # (n+1, n+1), zero diagonal

    @classmethod
    def from_matrix(cls, d) -> "EdgeLengthTable":
        d = np.asarray(d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 3:
            raise ValueError("edge table must be a square matrix of size >= 3")
        n = d.shape[0] - 1
        scale = float(np.abs(d).max())
        if scale <= 0.0:
            raise ValueError("edge table is identically zero")
        if np.abs(d - d.T).max() > _REL_EPS * scale:
            raise ValueError("edge table is not symmetric")
        if np.abs(np.diag(d)).max() > _REL_EPS * scale:
            raise ValueError("edge table diagonal must be zero")
        off = d[~np.eye(n + 1, dtype=bool)]
        if off.min() <= 0.0:
            raise ValueError("off-diagonal edge lengths must be positive")
        sym = 0.5 * (d + d.T)
        np.fill_diagonal(sym, 0.0)
        return cls(n=n, d=_readonly(sym))

    @classmethod
    def from_flat(cls, n: int, values) -> "EdgeLengthTable":
        """Build from lengths listed pairwise in lexicographic order
        (d_12, d_13, ..., d_1,n+1, d_23, ..., d_n,n+1)."""
        values = list(values)
        pairs = list(itertools.combinations(range(n + 1), 2))
        if len(values) != len(pairs):
            raise ValueError(
                f"dimension {n} needs {len(pairs)} edge lengths, got {len(values)}")
        d = np.zeros((n + 1, n + 1))
        for (i, j), v in zip(pairs, values):
            d[i, j] = d[j, i] = float(v)
        return cls.from_matrix(d)

    def flat(self) -> list[float]:
        return [float(self.d[i, j])
                for i, j in itertools.combinations(range(self.n + 1), 2)]

    def subtable(self, keep) -> "EdgeLengthTable":
        keep = list(keep)
        return EdgeLengthTable.from_matrix(self.d[np.ix_(keep, keep)])

    def validate_embeddable(self, rel_tol: float = 1e-10) -> None:
        """Check that every vertex subset spans a positive-volume simplex.

        Raises ``Degenerate`` for vanishing sub-volumes and ``NotEmbeddable``
        when a Cayley-Menger determinant has the wrong sign.
        """
        scale = float(self.d.max())
        for size in range(3, self.n + 2):
            k = size - 1
            vol_tol = (rel_tol * scale ** k) ** 2
            for subset in itertools.combinations(range(self.n + 1), size):
                sub = self.d[np.ix_(subset, subset)]
                v2 = squared_volume_from_distances(sub)
                if v2 < -vol_tol:
                    raise NotEmbeddable(
                        f"vertex subset {subset} has negative squared "
                        f"{k}-volume {v2:.3e}")
                if v2 <= vol_tol:
                    raise Degenerate(
                        f"vertex subset {subset} spans zero {k}-volume")


# ---------------------------------------------------------------------------
# barycentric points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BarycentricPoint:
    """Coordinate vector relative to a simplex.

    ``homogeneous`` points are defined up to scale; ``normalized`` points
    have coordinate sum 1.  A homogeneous vector with coordinate sum zero
    encodes a direction (point at infinity) and is rejected by any
    operation that needs an affine point.
    """

    coords: np.ndarray
    mode: str = "homogeneous"

    def __post_init__(self):
        coords = _readonly(self.coords)
        if coords.ndim != 1 or coords.size < 2:
            raise ValueError("coordinates must be a vector of length >= 2")
        norm = float(np.abs(coords).sum())
        if norm == 0.0:
            raise ValueError("coordinate vector must not be zero")
        if self.mode not in ("homogeneous", "normalized"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "normalized" and abs(coords.sum() - 1.0) > 1e-12 * max(1.0, norm):
            raise ValueError("normalized coordinates must sum to 1")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def homogeneous(cls, coords) -> "BarycentricPoint":
        return cls(coords=np.asarray(coords, float), mode="homogeneous")

    @classmethod
    def normalized_from(cls, coords) -> "BarycentricPoint":
        coords = np.asarray(coords, float)
        s = coords.sum()
        if abs(s) <= _REL_EPS * np.abs(coords).sum():
            raise PointAtInfinity("coordinate sum is zero")
        return cls(coords=coords / s, mode="normalized")

    @classmethod
    def vertex(cls, i: int, n: int) -> "BarycentricPoint":
        e = np.zeros(n + 1)
        e[i] = 1.0
        return cls(coords=e, mode="normalized")

    @property
    def dim(self) -> int:
        return self.coords.size - 1

    def is_finite(self) -> bool:
        return abs(self.coords.sum()) > _REL_EPS * np.abs(self.coords).sum()

    def normalized(self) -> "BarycentricPoint":
        if self.mode == "normalized":
            return self
        return BarycentricPoint.normalized_from(self.coords)

    @property
    def normalized_coords(self) -> np.ndarray:
        return self.normalized().coords

    def report_scaled(self) -> np.ndarray:
        """Homogeneous rendering scaled so the largest-magnitude entry is +1."""
        c = self.coords
        return c / c[int(np.argmax(np.abs(c)))]

    def __repr__(self):
        vals = ", ".join(f"{v:.12g}" for v in self.coords)
        return f"BarycentricPoint([{vals}], {self.mode})"


def as_point(obj, n: int | None = None) -> BarycentricPoint:
    """Coerce an array-like or BarycentricPoint, checking the dimension."""
    if isinstance(obj, BarycentricPoint):
        pt = obj
    else:
        pt = BarycentricPoint.homogeneous(obj)
    if n is not None and pt.dim != n:
        raise ValueError(f"expected {n + 1} coordinates, got {pt.dim + 1}")
    return pt


def require_nonzero_coords(p: np.ndarray, what: str = "operation") -> None:
    scale = float(np.abs(p).max())
    if np.abs(p).min() <= _REL_EPS * scale:
        raise OnSideplane(f"{what} requires all coordinates nonzero")


# ---------------------------------------------------------------------------
# simplex model
# ---------------------------------------------------------------------------

class SimplexModel:
    """An embedded n-simplex with cached edge lengths and volumes.

    Instances are immutable after construction and safe to share across
    threads.  ``validate=False`` skips the positive-volume requirement and
    is used internally for derived simplices (pedal figures may collapse).
    """

    def __init__(self, vertices, *, edges: EdgeLengthTable | None = None,
                 validate: bool = True):
        vertices = np.asarray(vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[0] != vertices.shape[1] + 1:
            raise ValueError("vertices must be an (n+1) x n array")
        self.vertices = _readonly(vertices)
        self.n = vertices.shape[1]
        diff = vertices[:, None, :] - vertices[None, :, :]
        dist = np.linalg.norm(diff, axis=2)
        if edges is not None:
            scale = max(dist.max(), edges.d.max())
            if np.abs(dist - edges.d).max() > 1e-10 * scale:
                raise ValueError("cached edge table disagrees with vertices")
            self.edges = edges
        else:
            self.edges = EdgeLengthTable.from_matrix(dist)
        self.sq_edges = _readonly(self.edges.d ** 2)
        self.diameter = float(self.edges.d.max())

        self.total_volume = simplex_volume(vertices)
        if validate and self.total_volume <= (_REL_EPS * self.diameter) ** self.n:
            raise Degenerate("vertices are affinely dependent")
        self.facet_volumes = _readonly(np.array([
            volume_from_distances(np.delete(np.delete(self.edges.d, i, 0), i, 1))
            for i in range(self.n + 1)
        ]))

        # affine system [vertices^T; 1 ... 1] mapping normalized barycentrics
        # to (x, 1); its inverse drives cart_to_bary and hyperplane duals
        m = np.vstack([vertices.T, np.ones(self.n + 1)])
        self._affine = _readonly(m)
        try:
            self._affine_inv = _readonly(np.linalg.inv(m))
        except np.linalg.LinAlgError:
            if validate:
                raise Degenerate("vertices are affinely dependent")
            self._affine_inv = None

        # unit sideplane normals / offsets: row i is the plane x_i = 0
        if self._affine_inv is not None:
            grads = self._affine_inv[:, :self.n]
            offs = -self._affine_inv[:, self.n]
            norms = np.linalg.norm(grads, axis=1)
            self._side_normals = _readonly(grads / norms[:, None])
            self._side_offsets = _readonly(offs / norms)
        else:
            self._side_normals = None
            self._side_offsets = None

    @classmethod
    def from_edge_lengths(cls, table: EdgeLengthTable) -> "SimplexModel":
        return embed_from_edge_lengths(table)

    # -- conversions ------------------------------------------------------

    def bary_to_cart(self, p) -> np.ndarray:
        p = as_point(p, self.n).normalized_coords
        return self.vertices.T @ p

    def cart_to_bary(self, x) -> BarycentricPoint:
        x = np.asarray(x, dtype=float)
        rhs = np.append(x, 1.0)
        coords = self._affine_inv @ rhs
        return BarycentricPoint(coords=coords, mode="normalized")

    # -- metric -----------------------------------------------------------

    def squared_distance(self, p, q) -> float:
        p = as_point(p, self.n).normalized_coords
        q = as_point(q, self.n).normalized_coords
        delta = p - q
        return max(float(-0.5 * delta @ self.sq_edges @ delta), 0.0)

    def distance(self, p, q) -> float:
        return math.sqrt(self.squared_distance(p, q))

    def vertex_distances(self, p) -> np.ndarray:
        """Distances from a point to every vertex, via the edge-length formula."""
        p = as_point(p, self.n).normalized_coords
        # -1/2 (p - e_i)^T D (p - e_i) = -1/2 p^T D p + (D p)_i  with D_ii = 0
        dp = self.sq_edges @ p
        base = -0.5 * float(p @ dp)
        return np.sqrt(np.clip(base + dp, 0.0, None))

    # -- sideplanes -------------------------------------------------------

    def sideplane(self, i: int) -> "Hyperplane":
        coeffs = np.zeros(self.n + 1)
        coeffs[i] = 1.0
        return Hyperplane.from_bary_coeffs(coeffs, self)

    def project_to_sideplane(self, x: np.ndarray, i: int) -> np.ndarray:
        nrm = self._side_normals[i]
        return x - (nrm @ x - self._side_offsets[i]) * nrm

    def pedal_feet(self, x: np.ndarray) -> np.ndarray:
        """Orthogonal projections of a Cartesian point onto all sideplanes."""
        resid = self._side_normals @ x - self._side_offsets
        return x[None, :] - resid[:, None] * self._side_normals

    def __repr__(self):
        return f"SimplexModel(n={self.n}, volume={self.total_volume:.6g})"


# ---------------------------------------------------------------------------
# hyperplanes and spheres
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """A hyperplane held in barycentric and Cartesian form simultaneously.

    Barycentric: {x normalized | sum_i bary_coeffs[i] * x_i = 0}.
    Cartesian:   {X | cart_normal . X = cart_offset} with unit normal.
    """

    bary_coeffs: np.ndarray
    cart_normal: np.ndarray
    cart_offset: float

    def __post_init__(self):
        object.__setattr__(self, "bary_coeffs", _readonly(self.bary_coeffs))
        object.__setattr__(self, "cart_normal", _readonly(self.cart_normal))

    @classmethod
    def from_bary_coeffs(cls, coeffs, model: SimplexModel) -> "Hyperplane":
        coeffs = np.asarray(coeffs, dtype=float)
        scale = float(np.abs(coeffs).max())
        if scale == 0.0:
            raise ValueError("hyperplane coefficients must not all vanish")
        if float(np.ptp(coeffs)) <= _REL_EPS * scale:
            raise AtInfinity("all-equal coefficients encode the hyperplane at infinity")
        w = model._affine_inv.T @ coeffs
        grad, off = w[:-1], w[-1]
        ng = float(np.linalg.norm(grad))
        return cls(bary_coeffs=coeffs, cart_normal=grad / ng, cart_offset=float(-off / ng))

    @classmethod
    def from_cartesian(cls, normal, offset: float, model: SimplexModel) -> "Hyperplane":
        normal = np.asarray(normal, dtype=float)
        ng = float(np.linalg.norm(normal))
        normal = normal / ng
        offset = float(offset) / ng
        coeffs = model.vertices @ normal - offset
        return cls(bary_coeffs=coeffs, cart_normal=normal, cart_offset=offset)

    def evaluate(self, p) -> float:
        """Barycentric form evaluated on normalized coordinates."""
        return float(self.bary_coeffs @ as_point(p).normalized_coords)

    def signed_distance(self, x) -> float:
        return float(self.cart_normal @ np.asarray(x, float) - self.cart_offset)


@dataclass(frozen=True)
class Sphere:
    """A sphere, possibly degenerated to a hyperplane (infinite radius)."""

    center: np.ndarray | None
    radius: float
    degenerate_hyperplane: Hyperplane | None = None

    def __post_init__(self):
        if self.center is not None:
            object.__setattr__(self, "center", _readonly(self.center))
        if self.degenerate_hyperplane is None and not self.radius > 0.0:
            raise ValueError("sphere radius must be positive")

    @property
    def is_degenerate(self) -> bool:
        return self.degenerate_hyperplane is not None

    def power(self, x) -> float:
        """Power of a point; for a degenerate sphere the signed distance."""
        x = np.asarray(x, float)
        if self.is_degenerate:
            return self.degenerate_hyperplane.signed_distance(x)
        d = x - self.center
        return float(d @ d - self.radius ** 2)


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def embed_from_edge_lengths(table: EdgeLengthTable) -> SimplexModel:
    """Realize an edge-length table as Cartesian vertices in canonical pose.

    Pose: vertex 0 at the origin, vertex 1 on the positive first axis, and
    every further vertex with positive last nonzero coordinate, so equal
    tables always embed to identical vertex arrays.
    """
    table.validate_embeddable()
    n = table.n
    d = table.d
    gram = np.empty((n, n))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            gram[i - 1, j - 1] = 0.5 * (d[0, i] ** 2 + d[0, j] ** 2 - d[i, j] ** 2)
    try:
        lower = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError:
        raise NotEmbeddable("Gram matrix is not positive definite") from None
    vertices = np.zeros((n + 1, n))
    vertices[1:] = lower
    model = SimplexModel(vertices, edges=table)
    realized = np.linalg.norm(
        vertices[:, None, :] - vertices[None, :, :], axis=2)
    if np.abs(realized - d).max() > 1e-10 * d.max():
        raise NotEmbeddable("embedding failed to realize the edge lengths")
    return model


def squared_distance(p, q, model: SimplexModel) -> float:
    """Squared distance between two barycentric points from edge lengths alone."""
    return model.squared_distance(p, q)


def bary_to_cart(p, model: SimplexModel) -> np.ndarray:
    return model.bary_to_cart(p)


def cart_to_bary(x, model: SimplexModel) -> BarycentricPoint:
    return model.cart_to_bary(x)


def facet_volumes(model: SimplexModel) -> np.ndarray:
    """(n-1)-volume of each facet, entry i opposite vertex i."""
    return model.facet_volumes


def barycentric_square(p) -> BarycentricPoint:
    """Componentwise square, as a homogeneous point."""
    return BarycentricPoint.homogeneous(as_point(p).coords ** 2)


def circumcenter_cart(model: SimplexModel) -> tuple[np.ndarray, float]:
    """Cartesian circumcenter and circumradius (linear solve)."""
    v = model.vertices
    a = 2.0 * (v[1:] - v[0])
    b = (v[1:] ** 2).sum(axis=1) - (v[0] ** 2).sum()
    center = np.linalg.solve(a, b)
    return center, float(np.linalg.norm(center - v[0]))


def circumsphere(model: SimplexModel) -> Sphere:
    center, radius = circumcenter_cart(model)
    return Sphere(center=center, radius=radius)


def classical_centers(model: SimplexModel) -> dict[str, BarycentricPoint]:
    """Centroid G, incenter I, symmedian point K and circumcenter O."""
    a = model.facet_volumes
    center, _ = circumcenter_cart(model)
    return {
        "G": BarycentricPoint.homogeneous(np.ones(model.n + 1)),
        "I": BarycentricPoint.homogeneous(a),
        "K": BarycentricPoint.homogeneous(a ** 2),
        "O": model.cart_to_bary(center),
    }


def sigma_polar_plane(p, model: SimplexModel) -> Hyperplane:
    """Polar hyperplane of a point with respect to the simplex.

    For P = [p_1 : ... : p_{n+1}] this is {x | sum_i x_i / p_i = 0}; it
    meets the line through vertices i and j at [-p_i : p_j] (slots i, j).
    """
    coords = as_point(p, model.n).coords
    require_nonzero_coords(coords, "polar hyperplane")
    return Hyperplane.from_bary_coeffs(1.0 / coords, model)
