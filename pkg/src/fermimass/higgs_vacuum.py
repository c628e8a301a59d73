"""Invariant Higgs potentials, their minima, and the Goldstone split.

Potentials are real polynomials in the single invariant s = |z|^2, which
covers rotationally symmetric models; other invariants can be supplied
through the custom_polynomial kind.  The realification convention is
fixed package-wide: C^N is identified with R^{2N} by interleaving,
(Re z_1, Im z_1, Re z_2, Im z_2, ...).  All real gradients, Hessians and
basis vectors below use it.

The minimizer runs backtracking gradient descent followed by a Newton
polish restricted to the orthogonal complement of the orbit directions.
The full Hessian is singular along the orbit at any minimum, so the
projection is what restores quadratic convergence.
"""

from dataclasses import dataclass

import numpy as np

from .group_rep import LieAlgebraRep, IsotropyResult, exp_map, isotropy_algebra
from .tolerances import DEFAULT

POTENTIAL_KINDS = ("mexican_hat", "custom_polynomial")


class SaddleConverged(RuntimeError):
    """The search converged to a critical point that is not a minimum."""

    def __init__(self, z0, transversal_eigs, message):
        super().__init__(message)
        self.z0 = np.asarray(z0, dtype=complex)
        self.transversal_eigs = np.asarray(transversal_eigs, dtype=float)


class NonConvergence(RuntimeError):
    """The minimizer ran out of iterations before reaching the tolerance."""


def realify(z):
    """Interleaved real coordinates (Re z_1, Im z_1, ...) of a complex vector."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    out = np.empty(2 * z.shape[0])
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def complexify(x):
    """Inverse of realify."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] % 2:
        raise ValueError("realified vectors have even length")
    return x[0::2] + 1j * x[1::2]


@dataclass(frozen=True)
class HiggsModel:
    """An invariant potential V(z) = p(|z|^2) over a unitary representation.

    mexican_hat: params = (lam, v) with V(z) = lam * (|z|^2 - v^2)^2.
    custom_polynomial: params = ascending coefficients of p(s).
    """

    rep: LieAlgebraRep
    potential_kind: str
    params: tuple

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if self.potential_kind not in POTENTIAL_KINDS:
            raise ValueError(
                f"unknown potential kind {self.potential_kind!r}, expected one of {POTENTIAL_KINDS}"
            )
        if self.potential_kind == "mexican_hat":
            if len(self.params) != 2:
                raise ValueError("mexican_hat takes exactly (lam, v)")
            lam, v = self.params
            if lam <= 0 or v <= 0:
                raise ValueError("mexican_hat needs lam > 0 and v > 0")
        else:
            coeffs = self.params
            if not coeffs:
                raise ValueError("custom_polynomial needs at least one coefficient")
            if len(coeffs) > 1 and coeffs[-1] <= 0:
                raise ValueError(
                    "potential is not bounded from below: leading coefficient must be positive"
                )

    def poly_coefficients(self):
        """Ascending coefficients of p(s), s = |z|^2."""
        if self.potential_kind == "mexican_hat":
            lam, v = self.params
            return np.array([lam * v ** 4, -2.0 * lam * v ** 2, lam])
        return np.array(self.params)


def _poly_eval(coeffs, s):
    return float(np.polynomial.polynomial.polyval(s, coeffs))


def _poly_derivative(coeffs):
    if len(coeffs) <= 1:
        return np.zeros(1)
    return coeffs[1:] * np.arange(1, len(coeffs))


def potential_eval(model, z):
    """V(z) = p(|z|^2)."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    return _poly_eval(model.poly_coefficients(), float(np.vdot(z, z).real))


def gradient(model, z):
    """Real gradient of V in the interleaved coordinates, length 2N."""
    x = realify(z)
    c1 = _poly_derivative(model.poly_coefficients())
    return 2.0 * _poly_eval(c1, float(x @ x)) * x


def hessian(model, z):
    """Real symmetric Hessian of V in the interleaved coordinates."""
    x = realify(z)
    s = float(x @ x)
    c1 = _poly_derivative(model.poly_coefficients())
    c2 = _poly_derivative(c1)
    return 4.0 * _poly_eval(c2, s) * np.outer(x, x) + 2.0 * _poly_eval(c1, s) * np.eye(x.shape[0])


def invariance_residual(model, n_samples=8, seed=0):
    """Max relative change of V along random group motions of random points."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        z = rng.standard_normal(model.rep.rep_dim) + 1j * rng.standard_normal(model.rep.rep_dim)
        g = exp_map(model.rep, rng.standard_normal(model.rep.dim_g))
        v0 = potential_eval(model, z)
        v1 = potential_eval(model, g @ z)
        worst = max(worst, abs(v1 - v0) / max(1.0, abs(v0)))
    return worst


def goldstone_split(rep, z0, cut=None):
    """Orthonormal (goldstone, physical) bases of R^{2N} at a critical point.

    The Goldstone block spans the realified orbit directions X_i z0; the
    physical block is its orthogonal complement.  Columns are the basis
    vectors.
    """
    cut = DEFAULT.nullspace_cut if cut is None else cut
    z0 = np.asarray(z0, dtype=complex).reshape(-1)
    if z0.shape[0] != rep.rep_dim:
        raise ValueError(f"vector has length {z0.shape[0]}, representation acts on C^{rep.rep_dim}")
    two_n = 2 * rep.rep_dim
    T = np.zeros((two_n, rep.dim_g))
    for k, X in enumerate(rep.generators):
        T[:, k] = realify(X @ z0)
    if not T.any():
        return np.zeros((two_n, 0)), np.eye(two_n)
    u, s, _ = np.linalg.svd(T)
    rank = int(np.sum(s > cut * s[0]))
    return u[:, :rank], u[:, rank:]


def unitary_gauge_project(split, phi):
    """Project a Higgs state onto the physical (unitary gauge) subspace."""
    _, physical = split
    x = realify(phi)
    return complexify(physical @ (physical.T @ x))


@dataclass(frozen=True)
class VacuumSolution:
    """A minimum of the potential with its symmetry-breaking data."""

    z0: np.ndarray
    value: float
    isotropy: IsotropyResult
    goldstone_basis: np.ndarray
    physical_basis: np.ndarray
    transversal_hessian_eigs: np.ndarray

    @property
    def goldstone_count(self):
        return self.goldstone_basis.shape[1]

    @property
    def physical_count(self):
        return self.physical_basis.shape[1]


def minimize(model, seed, gd_max_iter=2000, newton_max_iter=60, grad_tol=None, cut=None):
    """Find a minimum of the potential starting from a seed point.

    Raises SaddleConverged when the transversal Hessian at the critical
    point is not positive definite (for instance the symmetric origin of
    a mexican hat), and NonConvergence when iterations run out.
    """
    grad_tol = DEFAULT.gradient_norm if grad_tol is None else grad_tol
    z = np.asarray(seed, dtype=complex).reshape(-1)
    if z.shape[0] != model.rep.rep_dim:
        raise ValueError(f"seed has length {z.shape[0]}, representation acts on C^{model.rep.rep_dim}")
    x = realify(z)

    def gnorm(xv):
        return float(np.linalg.norm(gradient(model, complexify(xv))))

    # Phase 1: backtracking gradient descent down to a coarse neighborhood.
    for _ in range(gd_max_iter):
        g = gradient(model, complexify(x))
        gn = float(np.linalg.norm(g))
        if gn <= 1e-3 * max(1.0, float(np.linalg.norm(x))):
            break
        f0 = potential_eval(model, complexify(x))
        t = 1.0
        while t > 1e-18:
            xn = x - t * g
            if potential_eval(model, complexify(xn)) <= f0 - 1e-4 * t * gn * gn:
                break
            t *= 0.5
        x = x - t * g

    # Phase 2: Newton polish transversal to the orbit.
    for _ in range(newton_max_iter):
        zc = complexify(x)
        g = gradient(model, zc)
        gn = float(np.linalg.norm(g))
        if gn <= 0.25 * grad_tol * max(1.0, float(np.linalg.norm(x))):
            break
        _, physical = goldstone_split(model.rep, zc, cut=cut)
        if physical.shape[1] == 0:
            break
        H = hessian(model, zc)
        Hp = physical.T @ H @ physical
        try:
            step = -physical @ np.linalg.solve(Hp, physical.T @ g)
        except np.linalg.LinAlgError as exc:
            raise NonConvergence(f"projected Hessian is singular at |z| = {np.linalg.norm(zc):.6g}") from exc
        for _ in range(30):
            if gnorm(x + step) <= gn or np.linalg.norm(step) < 1e-16:
                break
            step = 0.5 * step
        x = x + step

    z0 = complexify(x)
    gn = float(np.linalg.norm(gradient(model, z0)))
    scale = max(1.0, float(np.linalg.norm(x)))
    if gn > grad_tol * scale:
        raise NonConvergence(
            f"gradient norm {gn:.3e} above tolerance {grad_tol * scale:.3e} after the iteration budget"
        )

    iso = isotropy_algebra(model.rep, z0, cut=cut)
    goldstone, physical = goldstone_split(model.rep, z0, cut=cut)
    H = hessian(model, z0)
    if physical.shape[1]:
        trans = np.linalg.eigvalsh(physical.T @ H @ physical)
    else:
        trans = np.zeros(0)
    if trans.size:
        floor = 1e-10 * max(1.0, float(np.max(np.abs(trans))))
        if float(trans.min()) <= floor:
            raise SaddleConverged(
                z0,
                trans,
                "converged to a critical point whose transversal Hessian is not positive "
                f"definite (min eigenvalue {trans.min():.3e})",
            )
    return VacuumSolution(
        z0=z0,
        value=potential_eval(model, z0),
        isotropy=iso,
        goldstone_basis=goldstone,
        physical_basis=physical,
        transversal_hessian_eigs=trans,
    )
