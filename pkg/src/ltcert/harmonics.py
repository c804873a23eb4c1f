"""Real spherical harmonics, vector eigenfields, torus modes, and grids.

Spherical harmonics follow the real convention: for degree n the 2n+1
orthonormal members are indexed k = 1 (zonal, m = 0), k = 2m (cos m phi),
k = 2m+1 (sin m phi), built from geodesy-normalized associated Legendre
functions via stable three-term recurrences (no finite differences
anywhere).  Vector eigenfields are the divergence-free and curl-free
families

    w_n^k = (n(n+1))^(-1/2) grad_perp Y_n^k,
    v_n^k = (n(n+1))^(-1/2) grad Y_n^k,

in the orthonormal frame (e_theta, e_phi) with grad_perp psi =
((sin theta)^(-1) d_phi psi, -d_theta psi).  Torus modes are normalized
cos/sin pairs on T^2_alpha = [0, 2 pi/alpha] x [0, 2 pi].

Quadrature grids are Gauss-Legendre in cos(theta) crossed with a uniform
phi grid (sphere) and uniform tensor grids (torus); both are exact for the
polynomial/trigonometric degrees the families produce, so no
discretization bias enters the certified quantities.
"""

import math
from dataclasses import dataclass

import numpy as np

from ltcert.specfun import _leggauss

#: evaluations of gradients this close to a pole (in sin theta) are refused
POLE_GUARD = 1e-8

DEFAULT_TORUS_MODES = ((1, 0), (-1, 0), (0, 1), (0, -1))


class PoleRegionError(ValueError):
    """Gradient requested inside the polar guard band."""


# ---------------------------------------------------------------------------
# Associated Legendre tables (orthonormal spherical-harmonic normalization).
# ---------------------------------------------------------------------------


def _legendre_tables(nmax: int, theta: np.ndarray, derivative: bool = False):
    """Normalized associated Legendre values P[n, m] at the given angles.

    P[n, m] carries the full normalization, so the harmonic of order m is
    P[n, m] (m = 0) or sqrt(2) P[n, m] cos/sin(m phi).  With derivative=True
    the theta-derivative table is returned as well; callers must keep
    sin(theta) outside the polar guard band for that path.
    """
    theta = np.asarray(theta, dtype=float)
    x = np.cos(theta)
    st = np.sin(theta)
    npts = theta.shape[0]
    p = np.zeros((nmax + 1, nmax + 1, npts))
    p[0, 0] = math.sqrt(1.0 / (4.0 * math.pi))
    for m in range(1, nmax + 1):
        p[m, m] = -math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * p[m - 1, m - 1]
    for m in range(0, nmax + 1):
        if m + 1 <= nmax:
            p[m + 1, m] = math.sqrt(2.0 * m + 3.0) * x * p[m, m]
        for n in range(m + 2, nmax + 1):
            a_nm = math.sqrt((4.0 * n * n - 1.0) / (n * n - m * m))
            b_nm = math.sqrt(
                ((n - 1.0) ** 2 - m * m) / (4.0 * (n - 1.0) ** 2 - 1.0)
            )
            p[n, m] = a_nm * (x * p[n - 1, m] - b_nm * p[n - 2, m])
    if not derivative:
        return p, None
    if np.any(np.abs(st) < POLE_GUARD):
        raise PoleRegionError("gradient tables need sin(theta) >= 1e-8")
    dp = np.zeros_like(p)
    inv_st = 1.0 / st
    for m in range(0, nmax + 1):
        dp[m, m] = m * x * p[m, m] * inv_st
        for n in range(m + 1, nmax + 1):
            c_nm = math.sqrt((2.0 * n + 1.0) * (n * n - m * m) / (2.0 * n - 1.0))
            dp[n, m] = (n * x * p[n, m] - c_nm * p[n - 1, m]) * inv_st
    return p, dp


def _order_to_m_parity(n: int, k: int):
    if not 1 <= k <= 2 * n + 1:
        raise ValueError(f"order index k = {k} outside 1..{2 * n + 1}")
    if k == 1:
        return 0, "c"
    return k // 2, "c" if k % 2 == 0 else "s"


def _angular_factor(m: int, parity: str, phi: np.ndarray):
    if m == 0:
        return np.ones_like(phi)
    trig = np.cos if parity == "c" else np.sin
    return math.sqrt(2.0) * trig(m * phi)


# ---------------------------------------------------------------------------
# Pointwise API.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarHarmonic:
    """Real spherical harmonic of degree n and order index k in 1..2n+1."""

    degree: int
    order: int

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        _order_to_m_parity(self.degree, self.order)

    @property
    def eigenvalue(self) -> float:
        return float(self.degree * (self.degree + 1))


@dataclass(frozen=True)
class VectorEigenfield:
    """w (divergence-free) or v (curl-free) eigenfield of degree n >= 1."""

    kind: str
    degree: int
    order: int

    def __post_init__(self):
        if self.kind not in ("w", "v"):
            raise ValueError("kind must be 'w' or 'v'")
        if self.degree < 1:
            raise ValueError("vector fields start at degree 1")
        _order_to_m_parity(self.degree, self.order)

    @property
    def eigenvalue(self) -> float:
        return float(self.degree * (self.degree + 1))


def eval_ylm(h: ScalarHarmonic, theta, phi):
    """Evaluate Y_n^k at (theta, phi); unit L^2(S^2) norm convention."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    m, parity = _order_to_m_parity(h.degree, h.order)
    p, _ = _legendre_tables(h.degree, theta)
    vals = p[h.degree, m] * _angular_factor(m, parity, phi)
    return float(vals[0]) if vals.size == 1 else vals


def eval_grad_ylm(h: ScalarHarmonic, theta, phi):
    """Tangent gradient (d_theta Y, (sin theta)^(-1) d_phi Y) at (theta, phi).

    Raises PoleRegionError within the polar guard band sin(theta) < 1e-8,
    where the orthonormal frame itself degenerates.
    """
    if h.degree < 1:
        raise ValueError("gradient needs degree >= 1")
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    m, parity = _order_to_m_parity(h.degree, h.order)
    p, dp = _legendre_tables(h.degree, theta, derivative=True)
    st = np.sin(theta)
    comp_theta = dp[h.degree, m] * _angular_factor(m, parity, phi)
    if m == 0:
        comp_phi = np.zeros_like(comp_theta)
    else:
        sign = -1.0 if parity == "c" else 1.0
        other = np.sin(m * phi) if parity == "c" else np.cos(m * phi)
        comp_phi = sign * math.sqrt(2.0) * m * p[h.degree, m] * other / st
    out = np.stack([comp_theta, comp_phi])
    return (float(out[0, 0]), float(out[1, 0])) if theta.size == 1 else out


# ---------------------------------------------------------------------------
# Quadrature grids.
# ---------------------------------------------------------------------------


class SphereGrid:
    """Gauss-Legendre x uniform product grid on S^2, total weight 4 pi.

    An order-L grid integrates spherical polynomials of degree <= 2L-1
    exactly: Gauss-Legendre handles cos(theta) degrees through 2L-1 and the
    2L-point uniform phi grid handles trigonometric degrees through 2L-1.
    """

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be >= 1")
        x, wx = _leggauss(order)
        self.order = order
        self.theta_nodes = np.arccos(x)
        self.theta_weights = wx
        self.phi_nodes = math.pi / order * np.arange(2 * order)
        self.phi_weight = math.pi / order
        self.theta = np.repeat(self.theta_nodes, 2 * order)
        self.phi = np.tile(self.phi_nodes, order)
        self.weights = np.repeat(wx, 2 * order) * self.phi_weight

    @property
    def size(self) -> int:
        return self.weights.size

    def integrate(self, values) -> float:
        return float(np.dot(np.asarray(values), self.weights))


class TorusGrid:
    """Uniform tensor grid on [0, L1] x [0, L2]; exact for trig polynomials.

    n points per axis integrate exactly every Fourier mode with nonzero
    frequency index below n, so grids are sized from the largest mode
    product the caller needs.
    """

    def __init__(self, lengths, counts):
        self.lengths = (float(lengths[0]), float(lengths[1]))
        self.counts = (int(counts[0]), int(counts[1]))
        n1, n2 = self.counts
        x1 = self.lengths[0] * np.arange(n1) / n1
        x2 = self.lengths[1] * np.arange(n2) / n2
        self.x1 = np.repeat(x1, n2)
        self.x2 = np.tile(x2, n1)
        self.cell_weight = self.lengths[0] * self.lengths[1] / (n1 * n2)
        self.area = self.lengths[0] * self.lengths[1]

    @property
    def size(self) -> int:
        return self.x1.size

    def integrate(self, values) -> float:
        return float(np.sum(np.asarray(values)) * self.cell_weight)


# ---------------------------------------------------------------------------
# Orthonormal families.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusMode:
    """Fourier mode pair on T^2_alpha; wavevector in integer lattice units."""

    k1: int
    k2: int
    parity: str  # 'c' or 's'
    alpha: float = 1.0

    @property
    def eigenvalue(self) -> float:
        return (self.alpha * self.k1) ** 2 + float(self.k2) ** 2


@dataclass(frozen=True)
class OrthonormalFamily:
    """An orthonormal eigenfunction family with exact spectral data.

    kind is one of sphere-scalar, sphere-w, sphere-v, sphere-mixed, torus.
    Members are single eigenfunctions, so every Dirichlet sum is an exact
    finite sum of eigenvalues.
    """

    kind: str
    members: tuple
    eigenvalues: tuple
    alpha: float = 1.0

    @property
    def domain(self) -> str:
        return "torus" if self.kind == "torus" else "sphere"

    @property
    def count(self) -> int:
        return len(self.members)

    @property
    def dirichlet_sum(self) -> float:
        return float(sum(self.eigenvalues))

    @property
    def degree_cut(self) -> int:
        if self.domain != "sphere":
            raise ValueError("degree_cut applies to sphere families")
        return max(m[-2] for m in self.members) + 1

    def default_grid(self):
        if self.domain == "sphere":
            # rho^2 has polynomial degree 4(N-1) <= 2L-1 at L = 2N
            return SphereGrid(2 * self.degree_cut)
        q1 = max(abs(m.k1) for m in self.members)
        q2 = max(abs(m.k2) for m in self.members)
        return TorusGrid(
            (2.0 * math.pi / self.alpha, 2.0 * math.pi),
            (4 * q1 + 5, 4 * q2 + 5),
        )

    def member_values(self, grid):
        """Member evaluations: (count, npts) scalar or (count, 2, npts) vector."""
        if self.kind == "sphere-scalar":
            return _sphere_scalar_values(self.members, grid)
        if self.kind in ("sphere-w", "sphere-v", "sphere-mixed"):
            return _sphere_vector_values(self.members, grid)
        return torus_member_values(self.members, self.alpha, grid.x1, grid.x2)

    def density(self, grid) -> np.ndarray:
        vals = self.member_values(grid)
        if vals.ndim == 2:
            return np.sum(vals * vals, axis=0)
        return np.sum(vals * vals, axis=(0, 1))

    def gram(self, grid) -> np.ndarray:
        vals = self.member_values(grid)
        if self.domain == "sphere":
            w = grid.weights
            if vals.ndim == 2:
                return (vals * w) @ vals.T
            flat = vals.reshape(vals.shape[0], -1)
            ww = np.concatenate([w, w])
            return (flat * ww) @ flat.T
        flat = vals.reshape(vals.shape[0], -1)
        return (flat @ flat.T) * grid.cell_weight


def _sphere_scalar_values(members, grid: SphereGrid) -> np.ndarray:
    nmax = max(n for n, _ in members)
    p, _ = _legendre_tables(nmax, grid.theta)
    out = np.empty((len(members), grid.size))
    for i, (n, k) in enumerate(members):
        m, parity = _order_to_m_parity(n, k)
        out[i] = p[n, m] * _angular_factor(m, parity, grid.phi)
    return out


def _sphere_vector_values(members, grid: SphereGrid) -> np.ndarray:
    nmax = max(n for _, n, _ in members)
    p, dp = _legendre_tables(nmax, grid.theta, derivative=True)
    st = np.sin(grid.theta)
    out = np.empty((len(members), 2, grid.size))
    for i, (vkind, n, k) in enumerate(members):
        m, parity = _order_to_m_parity(n, k)
        scale = 1.0 / math.sqrt(n * (n + 1.0))
        grad_theta = dp[n, m] * _angular_factor(m, parity, grid.phi)
        if m == 0:
            grad_phi = np.zeros(grid.size)
        else:
            sign = -1.0 if parity == "c" else 1.0
            other = np.sin(m * grid.phi) if parity == "c" else np.cos(m * grid.phi)
            grad_phi = sign * math.sqrt(2.0) * m * p[n, m] * other / st
        if vkind == "v":
            out[i, 0] = scale * grad_theta
            out[i, 1] = scale * grad_phi
        else:  # w = grad_perp: ((sin theta)^-1 d_phi, -d_theta)
            out[i, 0] = scale * grad_phi
            out[i, 1] = -scale * grad_theta
    return out


def torus_member_values(members, alpha: float, x1, x2, scale: float = 1.0) -> np.ndarray:
    """Evaluate torus modes at points; scale multiplies every member.

    Each mode is sqrt(alpha/2)/pi * cos/sin(alpha k1 x1 + k2 x2), the unit
    L^2(T^2_alpha) normalization.  The same formulas evaluated on a larger
    torus (times sqrt(alpha)) realize the periodic lift.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    coef = math.sqrt(alpha / 2.0) / math.pi * scale
    out = np.empty((len(members), x1.size))
    for i, mode in enumerate(members):
        phase = alpha * mode.k1 * x1 + mode.k2 * x2
        out[i] = coef * (np.cos(phase) if mode.parity == "c" else np.sin(phase))
    return out


def torus_member_gradients(members, alpha: float, x1, x2, scale: float = 1.0) -> np.ndarray:
    """Gradients of the torus modes, shape (count, 2, npts)."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    coef = math.sqrt(alpha / 2.0) / math.pi * scale
    out = np.empty((len(members), 2, x1.size))
    for i, mode in enumerate(members):
        kap1 = alpha * mode.k1
        kap2 = float(mode.k2)
        phase = kap1 * x1 + kap2 * x2
        if mode.parity == "c":
            d = -coef * np.sin(phase)
        else:
            d = coef * np.cos(phase)
        out[i, 0] = kap1 * d
        out[i, 1] = kap2 * d
    return out


def _scalar_members(n_cut: int):
    return tuple((n, k) for n in range(1, n_cut) for k in range(1, 2 * n + 2))


def _canonical_mode(k) -> tuple:
    k1, k2 = int(k[0]), int(k[1])
    if (k1, k2) == (0, 0):
        raise ValueError("the zero mode is excluded (zero-mean constraint)")
    return (k1, k2) if (k1 > 0 or (k1 == 0 and k2 > 0)) else (-k1, -k2)


def build_family(kind: str, n_cut: int = None, modes=None, alpha: float = 1.0) -> OrthonormalFamily:
    """Construct an orthonormal family with exact spectral data attached.

    kind: "sphere-scalar", "sphere-w", "sphere-v", "sphere-mixed" (all
    degrees 1..n_cut-1, requiring n_cut >= 2), or "torus" with a mode set
    closed under negation and an aspect ratio alpha in (0, 1].
    """
    if kind in ("sphere-scalar", "sphere-w", "sphere-v", "sphere-mixed"):
        if n_cut is None or n_cut < 2:
            raise ValueError("sphere families need degree cutoff n_cut >= 2")
        scalars = _scalar_members(n_cut)
        if kind == "sphere-scalar":
            members = scalars
        elif kind == "sphere-mixed":
            members = tuple(("w", n, k) for n, k in scalars) + tuple(
                ("v", n, k) for n, k in scalars
            )
        else:
            tag = "w" if kind == "sphere-w" else "v"
            members = tuple((tag, n, k) for n, k in scalars)
        eigs = tuple(float(m[-2] * (m[-2] + 1)) for m in members)
        return OrthonormalFamily(kind=kind, members=members, eigenvalues=eigs)
    if kind == "torus":
        if not modes:
            raise ValueError("torus families need a non-empty mode set")
        if not 0.0 < alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        raw = {(int(k[0]), int(k[1])) for k in modes}
        for k in raw:
            if k == (0, 0):
                raise ValueError("the zero mode is excluded (zero-mean constraint)")
            if (-k[0], -k[1]) not in raw:
                raise ValueError(f"mode set must be closed under negation; missing {(-k[0], -k[1])}")
        reps = sorted({_canonical_mode(k) for k in raw})
        members = tuple(
            TorusMode(k1=r[0], k2=r[1], parity=par, alpha=alpha)
            for r in reps
            for par in ("c", "s")
        )
        eigs = tuple(m.eigenvalue for m in members)
        return OrthonormalFamily(kind="torus", members=members, eigenvalues=eigs, alpha=alpha)
    raise ValueError(f"unknown family kind {kind!r}")
