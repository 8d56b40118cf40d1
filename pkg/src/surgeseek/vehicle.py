"""
3-DOF planar underactuated vehicle model.

State convention used throughout the package is a flat array of length 6:

    [x_world (m),
     y_world (m),
     heading (rad, unwrapped real line, never reduced mod 2*pi),
     surge velocity v_x (m/s, body frame),
     sway velocity v_y (m/s, body frame),
     yaw rate omega (rad/s)]

Input is [surge force u1 (N), yaw torque u2 (N*m)]. There is no sway
actuator: the input matrix INPUT_MAP maps the 2 inputs into the 3
generalized forces and encodes the underactuation.

Dynamics:

    q_dot = J(theta) v
    M v_dot + C(v) v + D v = INPUT_MAP u

with diagonal inertia M, a skew-symmetric Coriolis matrix C(v) with the
standard surface-vessel structure, and a constant positive-definite
damping matrix D (linear hydrodynamic damping).
"""
from dataclasses import dataclass, field

import numpy as np

# indices into the flat state vector
IX, IY, ITH, IVX, IVY, IOM = range(6)

# actuation map: surge force and yaw torque only, no sway input
INPUT_MAP = np.array([[1.0, 0.0],
                      [0.0, 0.0],
                      [0.0, 1.0]])


@dataclass(frozen=True)
class VehicleParams:
    """Inertia and damping of the planar vehicle.

    m11, m22, m33 are the diagonal inertia entries (surge, sway, yaw)
    and must be strictly positive. `d` is the 3x3 damping matrix, which
    must be symmetric positive definite; `diagonal()` is the common
    constructor.
    """

    m11: float
    m22: float
    m33: float
    d: np.ndarray

    def __post_init__(self):
        if not (self.m11 > 0 and self.m22 > 0 and self.m33 > 0):
            raise ValueError("inertia entries must be strictly positive")
        d = np.asarray(self.d, dtype=float)
        if d.shape != (3, 3):
            raise ValueError("damping matrix must be 3x3")
        if not np.allclose(d, d.T, atol=1e-12):
            raise ValueError("damping matrix must be symmetric")
        if np.any(np.linalg.eigvalsh(d) <= 0):
            raise ValueError("damping matrix must be positive definite")
        object.__setattr__(self, "d", d)

    @classmethod
    def diagonal(cls, m11, m22, m33, d11, d22, d33):
        return cls(m11, m22, m33, np.diag([float(d11), float(d22), float(d33)]))

    @property
    def inertia(self):
        return np.diag([self.m11, self.m22, self.m33])

    @property
    def inertia_inv(self):
        return np.diag([1.0 / self.m11, 1.0 / self.m22, 1.0 / self.m33])

    @property
    def d_diag(self):
        """Diagonal damping entries; raises if D is not diagonal."""
        d = self.d
        if np.any(d != np.diag(np.diag(d))):
            raise ValueError("damping matrix is not diagonal")
        return d[0, 0], d[1, 1], d[2, 2]

    def is_diagonal_damping(self):
        return bool(np.all(self.d == np.diag(np.diag(self.d))))


def reference_boat():
    """Benchmark boat with linear hydrodynamic damping."""
    return VehicleParams.diagonal(m11=1.412, m22=1.982, m33=0.354,
                                  d11=3.436, d22=12.99, d33=0.864)


def kinematic_matrix(theta):
    """Body-to-world kinematic transformation J(theta); block-orthogonal."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0],
                     [s, c, 0.0],
                     [0.0, 0.0, 1.0]])


def coriolis(params, v):
    """Coriolis matrix C(v) of the surface vessel; skew-symmetric for all v."""
    vx, vy = v[0], v[1]
    a = params.m22 * vy
    b = params.m11 * vx
    return np.array([[0.0, 0.0, -a],
                     [0.0, 0.0, b],
                     [a, -b, 0.0]])


def coriolis_force(params, v):
    """C(v) v, written out (degree-2 homogeneous in the velocities)."""
    vx, vy, om = v[0], v[1], v[2]
    return np.array([-params.m22 * vy * om,
                     params.m11 * vx * om,
                     (params.m22 - params.m11) * vx * vy])


def dynamics_rhs(params, state, u):
    """Time derivative of the 6-state under input u = (u1, u2)."""
    theta = state[ITH]
    v = state[3:6]
    c, s = np.cos(theta), np.sin(theta)
    qdot = np.array([c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]])
    gu = np.array([u[0], 0.0, u[1]])
    vdot = params.inertia_inv @ (gu - coriolis_force(params, v) - params.d @ v)
    return np.concatenate([qdot, vdot])
