"""Spherical moment tensors of normal cones.

For a cone N with lin(N) of dimension d, computes the rank-s tensor with
polynomial y -> integral of <u, y>^s over N intersected with the unit
sphere, with respect to H^{d-1}.

The cone is first split into its lineality space W and a pointed part C.
Exact paths cover: full subspaces, rays (+ W, i.e. half-subspaces),
pointed cones with pairwise orthogonal generators (+ W), planar arcs,
and arcs crossed with a line (spherical lunes).  Everything else falls
back to Monte-Carlo sampling on the sphere of lin(N) filtered by the
cone's membership oracle, with per-coordinate standard errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import stream
from .special import gamma_half, omega
from .symtensor import SymTensor, multi_degrees, multinomial, vector_power

__all__ = ["MomentResult", "ConeMomentBudgetError", "cone_sphere_moment", "trig_integral"]

_DIR_TOL = 1e-9


class ConeMomentBudgetError(RuntimeError):
    """Monte-Carlo acceptance rate collapsed; carries the partial result."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class MomentResult:
    tensor: SymTensor
    stderr: SymTensor
    method: str
    samples: int


def trig_integral(p, q, t1, t2):
    """Definite integral of cos^p(t) sin^q(t) over [t1, t2], by the standard
    power-reduction recurrence.  Accepts scalars or numpy arrays for the
    endpoints."""
    if p >= 2:
        term = (np.cos(t2) ** (p - 1) * np.sin(t2) ** (q + 1)
                - np.cos(t1) ** (p - 1) * np.sin(t1) ** (q + 1)) / (p + q)
        return term + (p - 1) / (p + q) * trig_integral(p - 2, q, t1, t2)
    if p == 1:
        return (np.sin(t2) ** (q + 1) - np.sin(t1) ** (q + 1)) / (q + 1)
    if q >= 2:
        term = (-np.cos(t2) * np.sin(t2) ** (q - 1)
                + np.cos(t1) * np.sin(t1) ** (q - 1)) / q
        return term + (q - 1) / q * trig_integral(0, q - 2, t1, t2)
    if q == 1:
        return -(np.cos(t2) - np.cos(t1))
    return t2 - t1


def _product_cone_moment(n, s, ray_frame, sub_frame):
    """Moment over the cone {sum a_i r_i + w : a_i >= 0, w in W} with the
    r_i pairwise orthonormal and orthogonal to W.  The intersection with
    the sphere is an 'orthant' in the orthonormal frame [r_1..r_q, W], so
    the integral of a monomial c^a is 2^{1-q} prod Gamma((a_i+1)/2) /
    Gamma((s+d)/2), vanishing when a W-exponent is odd."""
    q = ray_frame.shape[1]
    w = sub_frame.shape[1]
    d = q + w
    cols = [ray_frame[:, i] for i in range(q)] + [sub_frame[:, i] for i in range(w)]
    denom = gamma_half((s + d) / 2)
    out = SymTensor.zero(n, s)
    for a in _compositions(s, d):
        if any(ai % 2 for ai in a[q:]):
            continue
        val = 2.0 ** (1 - q) / denom
        for ai in a:
            val *= gamma_half((ai + 1) / 2)
        term = SymTensor.scalar(n, multinomial(s, a) * val)
        for col, ai in zip(cols, a):
            if ai:
                term = term * vector_power(col, ai)
        out = out + term
    return out


def _arc_moment(n, s, pa, pb, t1, t2):
    """Moment over the planar arc {cos t pa + sin t pb : t in [t1, t2]}."""
    out = SymTensor.zero(n, s)
    for i in range(s + 1):
        c = math.comb(s, i) * float(trig_integral(i, s - i, t1, t2))
        if c != 0.0:
            out = out + (vector_power(pa, i) * vector_power(pb, s - i)).scale(c)
    return out


def _lune_moment(n, s, pa, pb, t1, t2, w):
    """Moment over (arc in span{pa, pb}) + span{w}: parametrize
    u = cos(phi) v(theta) + sin(phi) w with phi in (-pi/2, pi/2) and area
    element cos(phi) dphi dtheta."""
    out = SymTensor.zero(n, s)
    for i in range(s + 1):
        phi = float(trig_integral(i + 1, s - i, -math.pi / 2, math.pi / 2))
        if phi == 0.0:
            continue
        arc = _arc_moment(n, i, pa, pb, t1, t2)
        out = out + (arc * vector_power(w, s - i)).scale(math.comb(s, i) * phi)
    return out


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _split_lineality(cone):
    """Unit generators split into the lineality space W (spanned by the
    generators whose negatives also belong to the cone) and the pointed
    remainder, projected into the orthogonal complement of W."""
    gens = cone.generators
    if len(gens) == 0:
        return np.zeros((cone.lin_frame.shape[0], 0)), np.zeros((0, cone.lin_frame.shape[0]))
    in_line = cone.contains(-gens)
    if np.any(in_line):
        u, sv, _ = np.linalg.svd(gens[in_line].T, full_matrices=False)
        wdim = int(np.sum(sv > _DIR_TOL))
        W = u[:, :wdim]
    else:
        W = np.zeros((gens.shape[1], 0))
    pointed = []
    for g in gens[~in_line]:
        p = g - W @ (W.T @ g)
        nrm = np.linalg.norm(p)
        if nrm > _DIR_TOL:
            p = p / nrm
            if not any(np.linalg.norm(p - q) <= 1e-8 for q in pointed):
                pointed.append(p)
    pointed = np.array(pointed) if pointed else np.zeros((0, gens.shape[1]))
    return W, pointed


def cone_sphere_moment(cone, s, budget=20000, seed=0):
    """Rank-s spherical moment tensor of a normal cone; exact whenever one
    of the closed-form geometries applies, Monte-Carlo otherwise."""
    n = cone.lin_frame.shape[0]
    d = cone.lin_dim
    zero = SymTensor.zero(n, s)
    if d == 0:
        return MomentResult(zero, zero, "empty", 0)
    W, pointed = _split_lineality(cone)
    dc = 0
    if len(pointed):
        sv = np.linalg.svd(pointed.T, compute_uv=False)
        dc = int(np.sum(sv > _DIR_TOL))
    wdim = W.shape[1]

    if dc == 0:
        return MomentResult(_product_cone_moment(n, s, np.zeros((n, 0)), cone.lin_frame),
                            zero, "full-sphere", 0)
    if dc == 1:
        ray = pointed[0][:, None]
        method = "point" if wdim == 0 else "product"
        return MomentResult(_product_cone_moment(n, s, ray, W), zero, method, 0)
    ortho = (len(pointed) == dc
             and np.max(np.abs(pointed @ pointed.T - np.eye(dc))) <= 1e-8)
    if ortho:
        return MomentResult(_product_cone_moment(n, s, pointed.T, W), zero, "product", 0)
    if dc == 2 and wdim <= 1:
        mean = pointed.sum(axis=0)
        mean /= np.linalg.norm(mean)
        u, svv, _ = np.linalg.svd(pointed.T, full_matrices=False)
        plane = u[:, :2]
        pa = mean
        pb = plane @ np.array([-(plane.T @ mean)[1], (plane.T @ mean)[0]])
        # pb: rotate pa by +90 degrees inside the plane
        pb = pb / np.linalg.norm(pb)
        rel = np.arctan2(pointed @ pb, pointed @ pa)
        t1, t2 = float(np.min(rel)), float(np.max(rel))
        if t2 - t1 >= math.pi - 1e-9:
            # boundary rays nearly antipodal; leave it to the sampler
            return _monte_carlo_moment(cone, s, budget, seed)
        if wdim == 0:
            return MomentResult(_arc_moment(n, s, pa, pb, t1, t2), zero, "arc", 0)
        return MomentResult(_lune_moment(n, s, pa, pb, t1, t2, W[:, 0]), zero, "arc", 0)
    return _monte_carlo_moment(cone, s, budget, seed)


def _monte_carlo_moment(cone, s, budget, seed, batch=20000):
    n = cone.lin_frame.shape[0]
    d = cone.lin_dim
    area = omega(d)
    betas = multi_degrees(n, s)
    sums = np.zeros(len(betas))
    sq_sums = np.zeros(len(betas))
    total = 0
    accepted = 0
    batch_idx = 0
    while total < budget:
        m = min(batch, budget - total)
        rng = stream(seed, batch_idx)
        batch_idx += 1
        z = rng.standard_normal((m, d))
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        u = z @ cone.lin_frame.T
        acc = cone.contains(u)
        ua = u[acc]
        accepted += len(ua)
        for bi, beta in enumerate(betas):
            mono = np.prod(ua ** np.array(beta), axis=1) if len(ua) else np.zeros(0)
            vals = area * mono
            sums[bi] += vals.sum()
            sq_sums[bi] += (vals ** 2).sum()
        total += m
    mean = sums / total
    var = np.maximum(sq_sums / total - mean ** 2, 0.0)
    se = np.sqrt(var / total)
    tensor = SymTensor.from_coordinates(n, s, dict(zip(betas, mean)))
    stderr = SymTensor.from_coordinates(n, s, dict(zip(betas, se)))
    result = MomentResult(tensor, stderr, "monte-carlo", total)
    if accepted < 1e-4 * total:
        raise ConeMomentBudgetError(
            f"acceptance rate {accepted}/{total} below 1e-4 with budget exhausted", result)
    return result
