"""Conductivity fields and their complex representations.

A 2x2 symmetric positive definite conductivity sigma = (s11, s12; s12, s22)
on a grid admits two equivalent complex encodings used throughout:

* hermitian coefficients  s0 = (s11 + s22)/2,  s1 = (s11 - s22)/2 - i s12,
  with SPD equivalent to s0 > |s1| and det sigma = s0^2 - |s1|^2;
* the complex dilatation (Beltrami coefficient)

      mu = (s22 - s11 - 2 i s12) / (s11 + s22 + 2 sqrt(det sigma))
         = -conj(s1) / (s0 + sqrt(s0^2 - |s1|^2)),

  with |mu|^2 = (s11 + s22 - 2 sqrt(det sigma)) / (s11 + s22 + 2 sqrt(det sigma)) < 1.

The homeomorphic solutions of  dbar(w) = mu dw  are isothermal coordinates for
sigma: pushing sigma forward along them yields the isotropic field
sqrt(det sigma).  A Riemannian metric (E, F, G) induces a complex structure the
same way, through  mu = ((E - G)/2 + iF) / ((E + G)/2 + sqrt(EG - F^2)).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateMetric, NonSPD
from .grids import Grid2D

#: cells with det sigma below this are rejected as non-SPD
DET_TOL = 1e-12


def _check_shape(grid: Grid2D, *arrays):
    for a in arrays:
        if a.shape != (grid.nx, grid.ny):
            raise ValueError(f"field shape {a.shape} != grid ({grid.nx}, {grid.ny})")


@dataclass(frozen=True)
class ConductivityField:
    """Cellwise SPD 2x2 conductivity; identity outside the domain mask."""

    grid: Grid2D
    s11: np.ndarray = field(repr=False)
    s12: np.ndarray = field(repr=False)
    s22: np.ndarray = field(repr=False)

    def __post_init__(self):
        s11 = np.ascontiguousarray(self.s11, dtype=float)
        s12 = np.ascontiguousarray(self.s12, dtype=float)
        s22 = np.ascontiguousarray(self.s22, dtype=float)
        _check_shape(self.grid, s11, s12, s22)
        det = s11 * s22 - s12 ** 2
        if np.any(det <= DET_TOL) or np.any(s11 + s22 <= 0):
            bad = int(np.sum((det <= DET_TOL) | (s11 + s22 <= 0)))
            raise NonSPD(f"{bad} cells violate SPD (det <= {DET_TOL:g} or trace <= 0)")
        out = ~self.grid.domain_mask
        ident = (np.abs(s11[out] - 1) < 1e-13).all() and \
                (np.abs(s22[out] - 1) < 1e-13).all() and \
                (np.abs(s12[out]) < 1e-13).all()
        if not ident:
            raise NonSPD("conductivity must equal the identity outside the domain mask")
        for name, a in (("s11", s11), ("s12", s12), ("s22", s22)):
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    # -- derived quantities --------------------------------------------------

    def det(self) -> np.ndarray:
        return self.s11 * self.s22 - self.s12 ** 2

    def as_matrices(self) -> np.ndarray:
        """(nx, ny, 2, 2) array of the cell matrices."""
        m = np.empty((self.grid.nx, self.grid.ny, 2, 2))
        m[..., 0, 0] = self.s11
        m[..., 0, 1] = self.s12
        m[..., 1, 0] = self.s12
        m[..., 1, 1] = self.s22
        return m

    def is_isotropic(self, tol: float = 1e-12) -> bool:
        return bool(np.all(np.abs(self.s11 - self.s22) < tol)
                    and np.all(np.abs(self.s12) < tol))

    def sample_matrix(self, z) -> np.ndarray:
        """Bilinear sample of the matrix entries at complex points z -> (..., 2, 2)."""
        e11 = self.grid.interp_bilinear(self.s11, z)
        e12 = self.grid.interp_bilinear(self.s12, z)
        e22 = self.grid.interp_bilinear(self.s22, z)
        out = np.empty(np.shape(e11) + (2, 2))
        out[..., 0, 0] = e11
        out[..., 0, 1] = e12
        out[..., 1, 0] = e12
        out[..., 1, 1] = e22
        return out

    # -- constructors ----------------------------------------------------------

    @classmethod
    def identity(cls, grid: Grid2D) -> "ConductivityField":
        one = np.ones((grid.nx, grid.ny))
        return cls(grid, one, np.zeros_like(one), one.copy())

    @classmethod
    def isotropic(cls, grid: Grid2D, s: np.ndarray) -> "ConductivityField":
        s = np.asarray(s, dtype=float)
        vals = np.where(grid.domain_mask, s, 1.0)
        return cls(grid, vals, np.zeros_like(vals), vals.copy())

    @classmethod
    def constant_matrix(cls, grid: Grid2D, m11: float, m12: float,
                        m22: float) -> "ConductivityField":
        """Constant matrix on the mask, identity outside."""
        mask = grid.domain_mask
        s11 = np.where(mask, m11, 1.0)
        s12 = np.where(mask, m12, 0.0)
        s22 = np.where(mask, m22, 1.0)
        return cls(grid, s11, s12, s22)


@dataclass(frozen=True)
class ComplexCoefficients:
    """Hermitian encoding (s0, s1) of a conductivity; s0 > |s1| cellwise."""

    grid: Grid2D
    s0: np.ndarray = field(repr=False)
    s1: np.ndarray = field(repr=False)

    def __post_init__(self):
        s0 = np.ascontiguousarray(self.s0, dtype=float)
        s1 = np.ascontiguousarray(self.s1, dtype=complex)
        _check_shape(self.grid, s0, s1)
        if np.any(s0 <= np.abs(s1)):
            raise NonSPD("complex coefficients violate s0 > |s1|")
        s0.setflags(write=False)
        s1.setflags(write=False)
        object.__setattr__(self, "s0", s0)
        object.__setattr__(self, "s1", s1)

    def det(self) -> np.ndarray:
        return self.s0 ** 2 - np.abs(self.s1) ** 2

    def to_matrix(self) -> ConductivityField:
        """Exact inverse of complex_coeffs."""
        s11 = self.s0 + self.s1.real
        s22 = self.s0 - self.s1.real
        s12 = -self.s1.imag
        return ConductivityField(self.grid, s11, s12, s22)


@dataclass(frozen=True)
class BeltramiField:
    """Complex dilatation mu with sup|mu| <= k < 1, supported in the mask."""

    grid: Grid2D
    mu: np.ndarray = field(repr=False)
    k: float = 0.0

    def __post_init__(self):
        mu = np.ascontiguousarray(self.mu, dtype=complex)
        _check_shape(self.grid, mu)
        sup = float(np.max(np.abs(mu))) if mu.size else 0.0
        k = max(float(self.k), sup)
        if k >= 1.0:
            raise NonSPD(f"Beltrami bound k = {k:.6f} >= 1")
        if np.any(np.abs(mu[~self.grid.domain_mask]) > 0):
            raise NonSPD("Beltrami coefficient must vanish outside the domain mask")
        mu.setflags(write=False)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "k", k)


# -- operations ---------------------------------------------------------------

def complex_coeffs(sigma: ConductivityField) -> ComplexCoefficients:
    """Hermitian coefficients: s0 = (s22 + s11)/2, s1 = (s11 - s22)/2 - i s12."""
    s0 = 0.5 * (sigma.s22 + sigma.s11)
    s1 = 0.5 * (sigma.s11 - sigma.s22) - 1j * sigma.s12
    return ComplexCoefficients(sigma.grid, s0, s1)


def beltrami_of_conductivity(sigma: ConductivityField) -> BeltramiField:
    """Complex dilatation of an SPD conductivity.

    mu = (s22 - s11 - 2 i s12) / (s11 + s22 + 2 sqrt(det sigma)); vanishes
    where sigma is the identity, in particular outside the mask.
    """
    det = sigma.det()
    if np.any(det <= DET_TOL):
        raise NonSPD("det sigma <= tolerance")  # unreachable for validated fields
    denom = sigma.s11 + sigma.s22 + 2.0 * np.sqrt(det)
    mu = (sigma.s22 - sigma.s11 - 2j * sigma.s12) / denom
    mu = np.where(sigma.grid.domain_mask, mu, 0.0)
    return BeltramiField(sigma.grid, mu, k=float(np.max(np.abs(mu))))


def metric_to_beltrami(grid: Grid2D, E: np.ndarray, F: np.ndarray,
                       G: np.ndarray) -> BeltramiField:
    """Complex structure induced by the metric ds^2 = E dx^2 + 2F dx dy + G dy^2.

    mu = ((E - G)/2 + iF) / ((E + G)/2 + sqrt(EG - F^2)); the chart solutions of
    dbar(w) = mu dw are isothermal coordinates for the metric.
    """
    E = np.asarray(E, dtype=float)
    F = np.asarray(F, dtype=float)
    G = np.asarray(G, dtype=float)
    disc = E * G - F ** 2
    if np.any(disc <= 0) or np.any(E <= 0):
        raise DegenerateMetric("metric requires E > 0 and EG - F^2 > 0")
    mu = (0.5 * (E - G) + 1j * F) / (0.5 * (E + G) + np.sqrt(disc))
    mu = np.where(grid.domain_mask, mu, 0.0)
    return BeltramiField(grid, mu, k=float(np.max(np.abs(mu))))
