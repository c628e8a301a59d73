"""Compact Lie algebra representations as explicit anti-Hermitian matrices.

The linear algebra of symmetry breaking lives here: infinitesimal orbit
directions, isotropy (unbroken) subalgebras computed as real null spaces,
commutant residuals, and finite transformations via the matrix
exponential.  Lie algebra elements are always real coefficient vectors
over the fixed generator list; reductive algebras with abelian factors
are admitted.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag, expm

from .tolerances import DEFAULT


@dataclass(frozen=True)
class LieAlgebraRep:
    """A unitary representation given by anti-Hermitian generator matrices."""

    generators: tuple
    label: str = ""

    def __post_init__(self):
        gens = tuple(np.asarray(g, dtype=complex) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("a representation needs at least one generator")
        name = self.label or "representation"
        d = gens[0].shape
        if len(d) != 2 or d[0] != d[1]:
            raise ValueError(f"{name}: generator 0 is not a square matrix, shape {d}")
        for k, X in enumerate(gens):
            if X.shape != d:
                raise ValueError(f"{name}: generator {k} has shape {X.shape}, expected {d}")
            dev = float(np.max(np.abs(X + X.conj().T)))
            if dev > DEFAULT.anti_hermitian:
                raise ValueError(
                    f"{name}: generator {k} is not anti-Hermitian "
                    f"(|X + X^dagger| = {dev:.3e} > {DEFAULT.anti_hermitian:.0e})"
                )
        res = closure_residual(gens)
        if res > DEFAULT.closure:
            raise ValueError(
                f"{name}: generators do not close under commutators "
                f"(residual {res:.3e} > {DEFAULT.closure:.0e})"
            )

    @property
    def dim_g(self):
        return len(self.generators)

    @property
    def rep_dim(self):
        return self.generators[0].shape[0]

    def element(self, coeffs):
        """Matrix of the algebra element with the given real coefficients."""
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (self.dim_g,):
            raise ValueError(f"expected {self.dim_g} coefficients, got shape {coeffs.shape}")
        X = np.zeros((self.rep_dim, self.rep_dim), dtype=complex)
        for c, G in zip(coeffs, self.generators):
            X += c * G
        return X


def closure_residual(generators):
    """Largest least-squares distance of any [X_i, X_j] from the real span."""
    gens = [np.asarray(g, dtype=complex) for g in generators]
    d = gens[0].shape[0]
    basis = np.zeros((2 * d * d, len(gens)))
    for k, X in enumerate(gens):
        basis[: d * d, k] = X.real.ravel()
        basis[d * d :, k] = X.imag.ravel()
    worst = 0.0
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            comm = gens[i] @ gens[j] - gens[j] @ gens[i]
            target = np.concatenate([comm.real.ravel(), comm.imag.ravel()])
            coef, *_ = np.linalg.lstsq(basis, target, rcond=None)
            worst = max(worst, float(np.linalg.norm(basis @ coef - target)))
    return worst


@dataclass(frozen=True)
class IsotropyResult:
    """Orthonormal coefficient vectors spanning the unbroken subalgebra."""

    basis: tuple
    dim: int

    def basis_matrix(self):
        """(dim, dim_g) array of the basis rows; empty rows if dim == 0."""
        if self.dim == 0:
            return np.zeros((0, 0))
        return np.array(self.basis)


def direct_sum(reps):
    """Block-diagonal direct sum of representations of the same algebra."""
    reps = list(reps)
    if not reps:
        raise ValueError("direct_sum needs at least one representation")
    dim_g = reps[0].dim_g
    for r in reps:
        if r.dim_g != dim_g:
            raise ValueError(
                f"cannot form a direct sum: {r.label or 'rep'} has {r.dim_g} "
                f"generators, expected {dim_g}"
            )
    gens = []
    for k in range(dim_g):
        gens.append(block_diag(*[np.asarray(r.generators[k], dtype=complex) for r in reps]))
    label = "+".join(r.label for r in reps if r.label)
    return LieAlgebraRep(generators=tuple(gens), label=label)


def infinitesimal_action(rep, coeffs, z):
    """Apply the algebra element with the given coefficients to a vector."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.shape[0] != rep.rep_dim:
        raise ValueError(f"vector has length {z.shape[0]}, representation acts on C^{rep.rep_dim}")
    return rep.element(coeffs) @ z


def isotropy_algebra(rep, z0, cut=None):
    """Unbroken subalgebra {X : X z0 = 0} as a real null-space computation.

    Stacks real and imaginary parts of the columns X_i z0 into a real
    2*rep_dim x dim_g matrix and keeps the right singular vectors whose
    singular value falls below cut * sigma_max.
    """
    cut = DEFAULT.nullspace_cut if cut is None else cut
    z0 = np.asarray(z0, dtype=complex).reshape(-1)
    if z0.shape[0] != rep.rep_dim:
        raise ValueError(f"vector has length {z0.shape[0]}, representation acts on C^{rep.rep_dim}")
    d, g = rep.rep_dim, rep.dim_g
    A = np.zeros((2 * d, g))
    for k, X in enumerate(rep.generators):
        col = X @ z0
        A[:d, k] = col.real
        A[d:, k] = col.imag
    _, s, vt = np.linalg.svd(A)
    smax = s[0] if s.size else 0.0
    rows = [vt[k] for k in range(g) if k >= s.size or s[k] <= cut * smax]
    return IsotropyResult(basis=tuple(rows), dim=len(rows))


def commutant_check(matrices, candidate):
    """Max-abs entry of [candidate, M] over the given matrices."""
    candidate = np.asarray(candidate, dtype=complex)
    if candidate.ndim != 2 or candidate.shape[0] != candidate.shape[1]:
        raise ValueError(f"candidate must be square, got shape {candidate.shape}")
    worst = 0.0
    for k, M in enumerate(matrices):
        M = np.asarray(M, dtype=complex)
        if M.shape != candidate.shape:
            raise ValueError(f"matrix {k} has shape {M.shape}, candidate has {candidate.shape}")
        worst = max(worst, float(np.max(np.abs(candidate @ M - M @ candidate))))
    return worst


def exp_map(rep, coeffs):
    """Unitary matrix exponential of the algebra element with these coefficients."""
    return expm(rep.element(coeffs))
