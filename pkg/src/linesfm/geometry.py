"""3D line representations and conversions between them.

A line observed by a camera is described in three equivalent ways:

* ``PluckerLine`` -- binormalized Pluecker coordinates: unit direction,
  unit moment (normal of the interpretation plane) and a positive depth.
* ``MPLine`` -- the moment vector plus the viewing ray of the line's
  closest point to the camera scaled by inverse depth (six parameters,
  no singularities).
* ``SphereLine`` -- a minimal four-parameter form with the moment in
  spherical angles; singular at the poles of the sphere.

All types are immutable values and all conversions are pure functions,
so they are safe to use concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNIT_TOL = 1e-9
DEGENERATE_TOL = 1e-12
POLE_TOL = 1e-9


class LineGeometryError(ValueError):
    """Base class for line-geometry domain errors."""


class DegenerateLine(LineGeometryError):
    """The line passes through (or too close to) the optical center."""


class LineAtInfinity(LineGeometryError):
    """Inverse depth is zero; the line has no finite representation."""


class SphericalSingularity(LineGeometryError):
    """The moment vector is at a pole of the sphere."""


def _as_vec3(v, name: str) -> np.ndarray:
    a = np.asarray(v, dtype=float).reshape(3).copy()
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} must be finite, got {a}")
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PluckerLine:
    """Binormalized Pluecker coordinates (direction, moment, depth).

    Invariants: ``direction`` and ``moment`` are unit vectors, mutually
    orthogonal, and ``depth > 0``.
    """

    direction: np.ndarray
    moment: np.ndarray
    depth: float

    def __post_init__(self):
        object.__setattr__(self, "direction", _as_vec3(self.direction, "direction"))
        object.__setattr__(self, "moment", _as_vec3(self.moment, "moment"))
        object.__setattr__(self, "depth", float(self.depth))
        if abs(np.linalg.norm(self.direction) - 1.0) > UNIT_TOL:
            raise ValueError("direction must be a unit vector")
        if abs(np.linalg.norm(self.moment) - 1.0) > UNIT_TOL:
            raise ValueError("moment must be a unit vector")
        if abs(self.moment @ self.direction) > UNIT_TOL:
            raise ValueError("moment must be orthogonal to direction")
        if not self.depth > 0.0:
            raise ValueError(f"depth must be positive, got {self.depth}")

    @classmethod
    def from_point_direction(cls, point, direction) -> "PluckerLine":
        """Build the line through ``point`` with unit ``direction``."""
        direction = _as_vec3(direction, "direction")
        moment, depth = moment_from_point_direction(point, direction)
        return cls(direction=direction, moment=moment, depth=depth)


@dataclass(frozen=True)
class MPLine:
    """Moment-point state: unit moment ``m`` and scaled closest-point ray ``chi``.

    ``chi`` points along the viewing ray of the line point closest to the
    camera and has norm ``1/depth``.  It is orthogonal to ``m``.
    """

    moment: np.ndarray
    chi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "moment", _as_vec3(self.moment, "moment"))
        object.__setattr__(self, "chi", _as_vec3(self.chi, "chi"))
        if abs(np.linalg.norm(self.moment) - 1.0) > UNIT_TOL:
            raise ValueError("moment must be a unit vector")
        if abs(self.moment @ self.chi) > UNIT_TOL * max(1.0, np.linalg.norm(self.chi)):
            raise ValueError("chi must be orthogonal to moment")

    @classmethod
    def project(cls, moment, chi) -> "MPLine":
        """Construct from raw vectors, reprojecting onto the constraint set.

        ``moment`` is renormalized and the component of ``chi`` along it is
        removed.  Raises ``DegenerateLine`` if ``moment`` has near-zero norm.
        """
        m = np.asarray(moment, dtype=float).reshape(3)
        n = np.linalg.norm(m)
        if n < DEGENERATE_TOL:
            raise DegenerateLine("moment norm is zero")
        m = m / n
        c = np.asarray(chi, dtype=float).reshape(3)
        c = c - (m @ c) * m
        return cls(moment=m, chi=c)

    def as_vector(self) -> np.ndarray:
        """Stacked ``(m, chi)`` as a writable 6-vector."""
        return np.concatenate([self.moment, self.chi])

    @classmethod
    def from_vector(cls, x) -> "MPLine":
        x = np.asarray(x, dtype=float).reshape(6)
        return cls.project(x[:3], x[3:])


@dataclass(frozen=True)
class SphereLine:
    """Spherical-coordinate state (theta, phi, eta1, eta2).

    ``theta`` (azimuth) and ``phi`` (zenith) locate the moment vector on the
    unit sphere; ``eta1`` and ``eta2`` are the projections of the direction
    scaled by inverse depth onto the remaining basis vectors.
    """

    theta: float
    phi: float
    eta1: float
    eta2: float

    def __post_init__(self):
        for name in ("theta", "phi", "eta1", "eta2"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not np.isfinite([self.theta, self.phi, self.eta1, self.eta2]).all():
            raise ValueError("sphere state must be finite")
        if not -np.pi <= self.theta <= np.pi:
            raise ValueError(f"theta out of range: {self.theta}")
        if not abs(self.phi) <= np.pi / 2:
            raise ValueError(f"phi out of range: {self.phi}")

    def as_vector(self) -> np.ndarray:
        return np.array([self.theta, self.phi, self.eta1, self.eta2])


def moment_from_point_direction(point, direction) -> tuple[np.ndarray, float]:
    """Moment vector and depth of the line through ``point`` along ``direction``.

    The moment is ``(p x d) / ||p x d||`` and the depth is ``||p x d||``,
    which equals ``||p|| sin(gamma)`` with ``gamma`` the angle between the
    viewing ray of ``p`` and the direction.

    Raises
    ------
    DegenerateLine
        If the line passes through the optical center (``||p x d|| ~ 0``).
    """
    p = np.asarray(point, dtype=float).reshape(3)
    d = np.asarray(direction, dtype=float).reshape(3)
    cross = np.cross(p, d)
    depth = np.linalg.norm(cross)
    if depth < DEGENERATE_TOL:
        raise DegenerateLine(
            f"line through point {p} with direction {d} passes through the origin"
        )
    return cross / depth, float(depth)


def plucker_to_mp(line: PluckerLine) -> MPLine:
    """Convert Pluecker coordinates to the moment-point state."""
    chi = np.cross(line.direction, line.moment) / line.depth
    return MPLine(moment=line.moment, chi=chi)


def mp_to_plucker(state: MPLine) -> PluckerLine:
    """Convert a moment-point state back to Pluecker coordinates.

    Raises
    ------
    LineAtInfinity
        If ``||chi||`` is numerically zero (infinite depth).
    """
    n = np.linalg.norm(state.chi)
    if n < DEGENERATE_TOL:
        raise LineAtInfinity("chi has zero norm")
    direction = np.cross(state.moment, state.chi)
    direction = direction / np.linalg.norm(direction)
    return PluckerLine(direction=direction, moment=state.moment, depth=1.0 / n)


def sphere_basis(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthonormal basis attached to the moment's spherical angles.

    Returns ``(m_s, m_p, m_t)`` where ``m_s`` is the moment direction,
    ``m_p`` its zenith tangent and ``m_t = m_s x m_p`` the azimuth tangent.
    """
    ct, st = np.cos(theta), np.sin(theta)
    cp, sp = np.cos(phi), np.sin(phi)
    m_s = np.array([ct * cp, st * cp, sp])
    m_p = np.array([ct * sp, st * sp, -cp])
    m_t = np.array([-st, ct, 0.0])
    return m_s, m_p, m_t


def moment_to_angles(moment) -> tuple[float, float]:
    """Spherical angles (theta, phi) of a unit moment vector.

    Raises
    ------
    SphericalSingularity
        If the moment is at a pole (``|m_z| > 1 - 1e-9``).
    """
    m = np.asarray(moment, dtype=float).reshape(3)
    if abs(m[2]) > 1.0 - POLE_TOL:
        raise SphericalSingularity(f"moment {m} is at a pole")
    theta = float(np.arctan2(m[1], m[0]))
    phi = float(np.arcsin(np.clip(m[2], -1.0, 1.0)))
    return theta, phi


def plucker_to_sphere(line: PluckerLine) -> SphereLine:
    """Convert Pluecker coordinates to the spherical state.

    Raises
    ------
    SphericalSingularity
        If the moment is at a pole of the sphere.
    """
    theta, phi = moment_to_angles(line.moment)
    _, m_p, m_t = sphere_basis(theta, phi)
    q = line.direction / line.depth
    return SphereLine(theta=theta, phi=phi, eta1=float(q @ m_p), eta2=float(q @ m_t))


def sphere_to_plucker(state: SphereLine) -> PluckerLine:
    """Convert the spherical state back to Pluecker coordinates.

    Raises
    ------
    LineAtInfinity
        If ``eta1**2 + eta2**2`` is numerically zero.
    """
    n2 = state.eta1 ** 2 + state.eta2 ** 2
    if n2 < DEGENERATE_TOL ** 2:
        raise LineAtInfinity("eta1 and eta2 are both zero")
    m_s, m_p, m_t = sphere_basis(state.theta, state.phi)
    q = state.eta1 * m_p + state.eta2 * m_t
    depth = 1.0 / np.sqrt(n2)
    return PluckerLine(direction=q * depth, moment=m_s, depth=depth)


def sphere_to_mp(state: SphereLine) -> MPLine:
    """Direct spherical-to-moment-point conversion (no Pluecker round trip)."""
    m_s, m_p, m_t = sphere_basis(state.theta, state.phi)
    chi = state.eta2 * m_p - state.eta1 * m_t
    return MPLine(moment=m_s, chi=chi)
