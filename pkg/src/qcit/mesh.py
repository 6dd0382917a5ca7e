"""Structured boundary-fitted triangulations of disks, annuli and Jordan domains.

All meshes are 'onion' meshes: concentric vertex rings with a fixed angular
count, triangulated ring by ring, with a center fan for simply connected
domains.  Ring radii can be snapped to prescribed interface radii so that a
disk mesh decomposes exactly into a smaller disk mesh plus an annulus mesh
sharing the interface ring -- this makes the discrete gluing identity exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .boundary import BoundaryDiscretization
from .errors import ConfigError


@dataclass(frozen=True)
class TriMesh:
    """Triangle mesh with distinguished boundary vertex index sets."""

    vertices: np.ndarray = field(repr=False)      # (nv, 2)
    triangles: np.ndarray = field(repr=False)     # (nt, 3) int
    boundary: np.ndarray = field(repr=False)      # outer boundary vertex indices
    inner_boundary: np.ndarray | None = field(default=None, repr=False)

    @property
    def nv(self) -> int:
        return len(self.vertices)

    def areas(self) -> np.ndarray:
        v = self.vertices
        t = self.triangles
        e1 = v[t[:, 1]] - v[t[:, 0]]
        e2 = v[t[:, 2]] - v[t[:, 0]]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    def centroids(self) -> np.ndarray:
        v = self.vertices
        t = self.triangles
        c = (v[t[:, 0]] + v[t[:, 1]] + v[t[:, 2]]) / 3.0
        return c[:, 0] + 1j * c[:, 1]


def _ring_strip(a_off: int, b_off: int, n: int) -> list[list[int]]:
    """Triangles joining ring at offset a_off to next ring at offset b_off."""
    tris = []
    for j in range(n):
        jn = (j + 1) % n
        tris.append([a_off + j, b_off + j, b_off + jn])
        tris.append([a_off + j, b_off + jn, a_off + jn])
    return tris


def _graded_fractions(n_r: int, snap: tuple[float, ...] = ()) -> np.ndarray:
    """Radial fractions in (0, 1], uniform, with prescribed values snapped in."""
    rho = np.linspace(0.0, 1.0, n_r + 1)[1:]
    for s in snap:
        if not 0 < s < 1:
            raise ConfigError("interface fraction must lie in (0, 1)")
        k = int(np.argmin(np.abs(rho - s)))
        rho[k] = s
    return rho


def onion_mesh(curve: np.ndarray, n_r: int, center: complex | None = None,
               snap: tuple[float, ...] = ()) -> TriMesh:
    """Mesh of the region enclosed by a closed curve, star-shaped about center.

    Vertex rings are center + rho_k * (curve - center); requires the region to
    be star-shaped with respect to the chosen center.
    """
    z = np.asarray(curve, dtype=complex)
    n = len(z)
    if center is None:
        center = BoundaryDiscretization.from_nodes(z).interior_point()
    rho = _graded_fractions(n_r, snap)
    verts = [np.array([[center.real, center.imag]])]
    for r in rho:
        ring = center + r * (z - center)
        verts.append(np.column_stack([ring.real, ring.imag]))
    V = np.vstack(verts)
    tris = []
    for j in range(n):
        tris.append([0, 1 + j, 1 + (j + 1) % n])
    for k in range(1, n_r):
        tris.extend(_ring_strip(1 + (k - 1) * n, 1 + k * n, n))
    T = np.asarray(tris, dtype=np.int64)
    mesh = TriMesh(V, T, np.arange(1 + (n_r - 1) * n, 1 + n_r * n))
    if np.any(mesh.areas() <= 0):
        raise ConfigError("onion mesh degenerate: region not star-shaped about center")
    return mesh


def annulus_mesh(inner: np.ndarray, outer: np.ndarray, n_r: int) -> TriMesh:
    """Mesh between two closed curves sampled at the same angular count.

    Rings interpolate linearly between the curves; ring 0 is the inner curve,
    ring n_r the outer one.
    """
    zi = np.asarray(inner, dtype=complex)
    zo = np.asarray(outer, dtype=complex)
    if len(zi) != len(zo):
        raise ConfigError("inner and outer curves need equal node counts")
    n = len(zi)
    frac = np.linspace(0.0, 1.0, n_r + 1)
    verts = []
    for f in frac:
        ring = (1 - f) * zi + f * zo
        verts.append(np.column_stack([ring.real, ring.imag]))
    V = np.vstack(verts)
    tris = []
    for k in range(n_r):
        tris.extend(_ring_strip(k * n, (k + 1) * n, n))
    T = np.asarray(tris, dtype=np.int64)
    mesh = TriMesh(V, T, np.arange(n_r * n, (n_r + 1) * n),
                   inner_boundary=np.arange(n))
    if np.any(mesh.areas() <= 0):
        raise ConfigError("annulus mesh degenerate (curves cross or wrong orientation)")
    return mesh


def default_ring_count(bd: BoundaryDiscretization) -> int:
    """Ring count making radial spacing comparable to the boundary arc spacing."""
    c = bd.interior_point()
    rad = float(np.mean(np.abs(bd.nodes - c)))
    harc = bd.length() / bd.n
    return max(8, int(round(rad / harc)))


def mesh_for_boundary(bd: BoundaryDiscretization, n_r: int | None = None,
                      snap: tuple[float, ...] = ()) -> TriMesh:
    if n_r is None:
        n_r = default_ring_count(bd)
    return onion_mesh(bd.nodes, n_r, snap=snap)
