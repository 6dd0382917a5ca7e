"""Uniform cell-centered grids and domain masks.

All volumetric fields in qcit live on a Grid2D: a uniform rectangular grid of
square cells with a boolean mask marking the physical domain X.  Cell (i, j)
is centered at  origin + h*(i + 1/2) + i*h*(j + 1/2)  in complex notation.
Conductivities are required to equal the identity outside the mask, and the
mask must keep a clearance band to the grid edge so that extensions by the
identity are well defined on the whole grid.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .errors import ConfigError

#: minimum number of identity cells between the mask and the grid edge
EDGE_BAND = 4


@dataclass(frozen=True)
class Grid2D:
    """Uniform cell-centered grid with a domain mask.

    Parameters
    ----------
    origin : complex
        Lower-left corner of the grid (not a cell center).
    h : float
        Cell spacing, > 0.
    nx, ny : int
        Cell counts along the two axes.
    domain_mask : ndarray of bool, shape (nx, ny)
        True on cells belonging to the domain X.
    """

    origin: complex
    h: float
    nx: int
    ny: int
    domain_mask: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.h <= 0:
            raise ConfigError("grid spacing must be positive")
        mask = np.asarray(self.domain_mask, dtype=bool)
        if mask.shape != (self.nx, self.ny):
            raise ConfigError(f"mask shape {mask.shape} != ({self.nx}, {self.ny})")
        object.__setattr__(self, "domain_mask", mask)
        mask.setflags(write=False)
        if mask.any():
            _, ncomp = ndimage.label(mask)
            if ncomp != 1:
                raise ConfigError(f"domain mask has {ncomp} connected components")
            band = np.zeros_like(mask)
            band[EDGE_BAND:-EDGE_BAND, EDGE_BAND:-EDGE_BAND] = True
            if (mask & ~band).any():
                raise ConfigError(
                    f"domain mask must keep a {EDGE_BAND}-cell identity band "
                    "to the grid edge")

    # -- geometry ----------------------------------------------------------

    def cell_centers(self) -> np.ndarray:
        """Complex (nx, ny) array of cell centers."""
        x = self.origin.real + self.h * (np.arange(self.nx) + 0.5)
        y = self.origin.imag + self.h * (np.arange(self.ny) + 0.5)
        return x[:, None] + 1j * y[None, :]

    def cell_index(self, z) -> tuple[np.ndarray, np.ndarray]:
        """Indices of the cells containing the points z (clipped to the grid)."""
        z = np.asarray(z)
        i = np.floor((z.real - self.origin.real) / self.h).astype(int)
        j = np.floor((z.imag - self.origin.imag) / self.h).astype(int)
        return np.clip(i, 0, self.nx - 1), np.clip(j, 0, self.ny - 1)

    def contains(self, z) -> np.ndarray:
        """True where z lies inside the grid rectangle."""
        z = np.asarray(z)
        w = self.origin
        return ((z.real >= w.real) & (z.real <= w.real + self.h * self.nx)
                & (z.imag >= w.imag) & (z.imag <= w.imag + self.h * self.ny))

    # -- constructors --------------------------------------------------------

    @classmethod
    def square(cls, half_width: float, n: int, mask_radius: float | None = None,
               center: complex = 0j) -> "Grid2D":
        """Square grid [-w, w]^2 around `center`, optionally disk-masked."""
        h = 2.0 * half_width / n
        origin = center - half_width - 1j * half_width
        g0 = cls(origin, h, n, n, np.zeros((n, n), dtype=bool))
        if mask_radius is None:
            mask = np.zeros((n, n), dtype=bool)
        else:
            zc = g0.cell_centers()
            mask = np.abs(zc - center) < mask_radius
        return cls(origin, h, n, n, mask)

    @classmethod
    def for_disk(cls, radius: float = 1.0, n: int = 256,
                 pad: float = 0.25, center: complex = 0j) -> "Grid2D":
        """Grid covering a disk domain with the required identity band."""
        half = radius * (1.0 + pad)
        return cls.square(half, n, mask_radius=radius, center=center)

    def interp_bilinear(self, values: np.ndarray, z) -> np.ndarray:
        """Bilinear interpolation of a cell field at complex points z.

        Points outside the cell-center hull are clamped to it.
        """
        z = np.asarray(z)
        fx = (z.real - self.origin.real) / self.h - 0.5
        fy = (z.imag - self.origin.imag) / self.h - 0.5
        fx = np.clip(fx, 0.0, self.nx - 1.000001)
        fy = np.clip(fy, 0.0, self.ny - 1.000001)
        i0 = np.floor(fx).astype(int)
        j0 = np.floor(fy).astype(int)
        i0 = np.minimum(i0, self.nx - 2)
        j0 = np.minimum(j0, self.ny - 2)
        tx = fx - i0
        ty = fy - j0
        v = values
        return (v[i0, j0] * (1 - tx) * (1 - ty) + v[i0 + 1, j0] * tx * (1 - ty)
                + v[i0, j0 + 1] * (1 - tx) * ty + v[i0 + 1, j0 + 1] * tx * ty)
