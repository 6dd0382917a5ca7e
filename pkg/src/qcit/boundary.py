"""Boundary discretizations: nodes, arclength weights, normals, tangents.

A closed C^1 boundary curve is represented by n nodes equispaced in a 2pi
parameter, ordered counterclockwise.  Derivatives along the curve are taken
spectrally, which is what makes the trapezoid-type quadratures used on these
curves spectrally accurate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError


def spectral_derivative(values: np.ndarray) -> np.ndarray:
    """d/dt of a 2pi-periodic sampled function, via FFT."""
    n = len(values)
    k = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        k = k.copy()
        k[n // 2] = 0.0  # drop the unpaired Nyquist mode for odd derivatives
    return np.fft.ifft(1j * k * np.fft.fft(values))


def trig_interp(values: np.ndarray, n_out: int) -> np.ndarray:
    """Trigonometric interpolation of periodic samples onto n_out points."""
    n = len(values)
    if n_out == n:
        return values.copy()
    F = np.fft.fft(values)
    out = np.zeros(n_out, dtype=complex)
    half = n // 2
    if n_out > n:
        out[:half] = F[:half]
        out[-half:] = F[-half:]
        if n % 2 == 0:
            out[half] = 0.5 * F[half]
            out[n_out - half] += 0.5 * F[half]
    else:
        h2 = n_out // 2
        out[:h2] = F[:h2]
        out[-h2:] = F[-h2:]
    return np.fft.ifft(out) * (n_out / n)


@dataclass(frozen=True)
class BoundaryDiscretization:
    """Nodes on a closed curve with arclength weights, tangents and normals.

    nodes[j] = gamma(2 pi j / n) for a counterclockwise parameterization gamma;
    weights are the arclength quadrature weights |gamma'| * 2pi/n, tangents the
    unit tangents, normals the outward unit normals (tau rotated by -pi/2).
    """

    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    tangents: np.ndarray = field(repr=False)
    normals: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = len(self.nodes)
        for name in ("nodes", "weights", "tangents", "normals"):
            a = np.ascontiguousarray(getattr(self, name))
            if a.shape != (n,):
                raise ConfigError(f"{name} must be a length-{n} vector")
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        if np.any(self.weights <= 0):
            raise ConfigError("arclength weights must be positive")
        # counterclockwise orientation: total winding of the tangent is +1
        darg = np.angle(self.tangents / np.roll(self.tangents, 1))
        if abs(darg.sum() / (2 * np.pi) - 1.0) > 0.25:
            raise ConfigError("boundary nodes must be ordered counterclockwise")

    @property
    def n(self) -> int:
        return len(self.nodes)

    def length(self) -> float:
        return float(self.weights.sum())

    @classmethod
    def circle(cls, n: int, radius: float = 1.0,
               center: complex = 0j) -> "BoundaryDiscretization":
        t = 2 * np.pi * np.arange(n) / n
        z = center + radius * np.exp(1j * t)
        tau = 1j * np.exp(1j * t)
        nu = np.exp(1j * t)
        w = np.full(n, 2 * np.pi * radius / n)
        return cls(z, w, tau, nu)

    @classmethod
    def from_nodes(cls, nodes: np.ndarray) -> "BoundaryDiscretization":
        """Closed curve through equispaced-parameter samples; spectral weights."""
        z = np.asarray(nodes, dtype=complex)
        dz = spectral_derivative(z)
        speed = np.abs(dz)
        if np.any(speed <= 0):
            raise ConfigError("degenerate parameterization (zero speed)")
        tau = dz / speed
        w = speed * (2 * np.pi / len(z))
        return cls(z, w, tau, -1j * tau)

    def resample(self, n_out: int) -> "BoundaryDiscretization":
        return BoundaryDiscretization.from_nodes(trig_interp(self.nodes, n_out))

    def interior_point(self) -> complex:
        """A point inside the curve (area centroid of the enclosed region)."""
        z = self.nodes
        dz = spectral_derivative(z)
        area = 0.5 * np.sum(np.imag(np.conj(z) * dz)) * (2 * np.pi / self.n)
        cz = np.sum(z * np.imag(np.conj(z) * dz)) * (2 * np.pi / self.n) / (3 * area)
        return complex(cz)
