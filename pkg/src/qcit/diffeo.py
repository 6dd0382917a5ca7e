"""Sampled diffeomorphisms, push-forward of conductivities, isotropization.

The push-forward of a conductivity along an orientation-preserving map Phi is

    (Phi_* sigma)(w) = [ J sigma J^T / det J ](Phi^{-1}(w)),   J = DPhi,

the unique transformation law that preserves Dirichlet energy, hence the
boundary measurements when Phi fixes the boundary.  Conformal maps have
J J^T = det(J) I, so they preserve isotropy; for the isothermal map F of a
conductivity sigma-hat the push-forward is the isotropic field
sqrt(det sigma-hat) evaluated at the preimage.

Inverse maps are evaluated by a vectorized Newton iteration on the bilinear
interpolant of the forward samples, seeded by a nearest-sample lookup.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .conductivity import ConductivityField
from .errors import NonInvertible
from .grids import Grid2D

NEWTON_TOL = 1e-10
NEWTON_MAXIT = 50


def _fd_jacobian(grid: Grid2D, phi: np.ndarray) -> np.ndarray:
    """Centered finite-difference Jacobian of a sampled complex map.

    One-sided second-order stencils at the grid edge.
    """
    h = grid.h
    dudx = np.gradient(phi.real, h, axis=0, edge_order=2)
    dudy = np.gradient(phi.real, h, axis=1, edge_order=2)
    dvdx = np.gradient(phi.imag, h, axis=0, edge_order=2)
    dvdy = np.gradient(phi.imag, h, axis=1, edge_order=2)
    J = np.empty(phi.shape + (2, 2))
    J[..., 0, 0] = dudx
    J[..., 0, 1] = dudy
    J[..., 1, 0] = dvdx
    J[..., 1, 1] = dvdy
    return J


@dataclass(frozen=True)
class Diffeomorphism:
    """Forward map samples and Jacobians on a grid."""

    grid: Grid2D
    phi: np.ndarray = field(repr=False)
    jac: np.ndarray = field(repr=False)

    def __post_init__(self):
        phi = np.ascontiguousarray(self.phi, dtype=complex)
        jac = np.ascontiguousarray(self.jac, dtype=float)
        if phi.shape != (self.grid.nx, self.grid.ny):
            raise ValueError("phi shape does not match grid")
        if jac.shape != phi.shape + (2, 2):
            raise ValueError("jacobian shape must be (nx, ny, 2, 2)")
        det = jac[..., 0, 0] * jac[..., 1, 1] - jac[..., 0, 1] * jac[..., 1, 0]
        if np.any(det <= 0):
            raise NonInvertible(f"{int(np.sum(det <= 0))} cells have det DPhi <= 0")
        phi.setflags(write=False)
        jac.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "jac", jac)

    @classmethod
    def identity(cls, grid: Grid2D) -> "Diffeomorphism":
        z = grid.cell_centers()
        J = np.zeros(z.shape + (2, 2))
        J[..., 0, 0] = 1.0
        J[..., 1, 1] = 1.0
        return cls(grid, z, J)

    @classmethod
    def from_samples(cls, grid: Grid2D, phi: np.ndarray) -> "Diffeomorphism":
        """Sampled map with finite-difference Jacobians."""
        phi = np.asarray(phi, dtype=complex)
        return cls(grid, phi, _fd_jacobian(grid, phi))

    @classmethod
    def from_callable(cls, grid: Grid2D, fn, jac_fn=None) -> "Diffeomorphism":
        """Map z -> fn(z); Jacobian analytic via jac_fn(z) -> (..., 2, 2) or FD."""
        z = grid.cell_centers()
        phi = np.asarray(fn(z), dtype=complex)
        if jac_fn is None:
            return cls.from_samples(grid, phi)
        return cls(grid, phi, np.asarray(jac_fn(z), dtype=float))

    # -- evaluation ----------------------------------------------------------

    def apply(self, z) -> np.ndarray:
        return self.grid.interp_bilinear(self.phi, z)

    def jac_at(self, z) -> np.ndarray:
        out = np.empty(np.shape(np.asarray(z)) + (2, 2))
        for a in range(2):
            for b in range(2):
                out[..., a, b] = self.grid.interp_bilinear(self.jac[..., a, b], z)
        return out

    def det_at(self, z) -> np.ndarray:
        J = self.jac_at(z)
        return J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]

    def invert(self, w, strict: bool = True):
        """Preimages Phi^{-1}(w) by nearest-sample seeded Newton iteration.

        Returns (z, ok) where ok flags points for which the iteration reached
        |Phi(z) - w| <= NEWTON_TOL with z inside the grid.  With strict=True a
        failure raises NonInvertible instead.
        """
        w = np.asarray(w, dtype=complex)
        shape = w.shape
        wf = w.ravel()
        tree = cKDTree(np.column_stack([self.phi.real.ravel(), self.phi.imag.ravel()]))
        _, idx = tree.query(np.column_stack([wf.real, wf.imag]))
        zc = self.grid.cell_centers().ravel()
        z = zc[idx].copy()
        active = np.ones(z.shape, dtype=bool)
        for _ in range(NEWTON_MAXIT):
            r = self.apply(z[active]) - wf[active]
            done = np.abs(r) <= NEWTON_TOL
            if done.all():
                sub = np.where(active)[0][done]
                active[sub] = False
                if not active.any():
                    break
                continue
            J = self.jac_at(z[active])
            det = J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]
            det = np.where(np.abs(det) < 1e-300, 1e-300, det)
            # solve J dz = -r componentwise (dz as complex step)
            dx = (-r.real * J[..., 1, 1] + r.imag * J[..., 0, 1]) / det
            dy = (r.real * J[..., 1, 0] - r.imag * J[..., 0, 0]) / det
            step = dx + 1j * dy
            znew = z[active] + step
            # keep iterates inside the grid rectangle
            o = self.grid.origin
            znew = np.clip(znew.real, o.real, o.real + self.grid.h * self.grid.nx) \
                + 1j * np.clip(znew.imag, o.imag, o.imag + self.grid.h * self.grid.ny)
            z[active] = znew
        ok = np.abs(self.apply(z) - wf) <= 10 * NEWTON_TOL
        if strict and not ok.all():
            raise NonInvertible(f"{int(np.sum(~ok))} points failed Newton inversion")
        return z.reshape(shape), ok.reshape(shape)


def push_forward(sigma: ConductivityField, phi: Diffeomorphism,
                 image_grid: Grid2D | None = None) -> ConductivityField:
    """Push a conductivity forward along a diffeomorphism.

    The result lives on image_grid (default: the source grid) with mask set to
    the cells whose preimage lands in the source mask; it is the identity
    elsewhere.  Raises NonInvertible when a masked image cell has no preimage.
    """
    src = sigma.grid
    tgt_geom = image_grid if image_grid is not None else src
    w = tgt_geom.cell_centers()
    z, ok = phi.invert(w, strict=False)
    in_src = ok & src.contains(z)
    iz, jz = src.cell_index(z)
    in_mask = in_src & src.domain_mask[iz, jz]

    J = phi.jac_at(z)
    det = J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]
    if np.any(det[in_src] <= 0):
        raise NonInvertible("preimage Jacobian not orientation-preserving")
    S = sigma.sample_matrix(z)
    pushed = np.einsum('...ab,...bc,...dc->...ad', J, S, J) / np.abs(det)[..., None, None]

    s11 = np.where(in_mask, pushed[..., 0, 0], 1.0)
    s12 = np.where(in_mask, 0.5 * (pushed[..., 0, 1] + pushed[..., 1, 0]), 0.0)
    s22 = np.where(in_mask, pushed[..., 1, 1], 1.0)

    grid_out = Grid2D(tgt_geom.origin, tgt_geom.h, tgt_geom.nx, tgt_geom.ny, in_mask)
    if image_grid is not None and image_grid.domain_mask.any():
        # caller fixed the image mask: points inside it must have preimages
        missing = image_grid.domain_mask & ~in_src
        if missing.any():
            raise NonInvertible(f"{int(missing.sum())} masked image cells have no preimage")
        keep = image_grid.domain_mask & in_mask
        s11 = np.where(keep, s11, 1.0)
        s12 = np.where(keep, s12, 0.0)
        s22 = np.where(keep, s22, 1.0)
        grid_out = image_grid
    return ConductivityField(grid_out, s11, s12, s22)


def isotropize_value(sigma: ConductivityField, preimages) -> np.ndarray:
    """Isotropic values sqrt(det sigma) sampled at given preimage points.

    `preimages` are the points F^{-1}(w) for the evaluation points w of the
    isothermal map F; the result is the isotropic conductivity at w.
    """
    z = np.asarray(preimages, dtype=complex)
    det = sigma.grid.interp_bilinear(sigma.det(), z)
    if np.any(det <= 0):
        raise NonInvertible("interpolated det sigma <= 0 at a preimage")
    return np.sqrt(det)
