"""Central registry of numerical tolerances.

Every check in the package pulls its default threshold from here, so a
single scale factor (CLI flag --tol-scale) or a per-model override table
reaches all of them.  Field names double as the override keys accepted in
model files.
"""

from dataclasses import dataclass, fields


@dataclass(frozen=True)
class Tolerances:
    # Clifford algebra identities (anticommutators, grading, right inverse)
    clifford_identity: float = 1e-12
    # generator anti-Hermiticity
    anti_hermitian: float = 1e-12
    # Lie-algebra closure least-squares residual
    closure: float = 1e-10
    # isotropy basis must annihilate the minimum to this (times max(1,|z0|))
    isotropy_action: float = 1e-10
    # singular values below nullspace_cut * sigma_max count as zero
    nullspace_cut: float = 1e-9
    # unitarity of exponentiated algebra elements and gauge fields
    unitary: float = 1e-10
    # relative invariance of the potential along the group orbit
    invariance: float = 1e-9
    # gradient norm at a reported minimum (times max(1,|z0|))
    gradient_norm: float = 1e-8
    # relative agreement of analytic derivatives with finite differences
    finite_difference: float = 1e-6
    # Hessian restricted to Goldstone directions must vanish to this
    goldstone_flat: float = 1e-7
    # Yukawa equivariance residual
    equivariance: float = 1e-12
    # diagonal blocks of an odd endomorphism
    block_structure: float = 1e-12
    # commutant residual of the mass matrix against unbroken generators
    commutant: float = 1e-12
    # multiset deviation of mass spectra across the orbit
    orbit_spectrum: float = 1e-9
    # eigenbundle reconstruction of the squared mass matrix
    reconstruction: float = 1e-10
    # singular values within eigenvalue_group * sigma_max share a block
    eigenvalue_group: float = 1e-8
    # lattice dispersion residual, relative to the spectral scale
    dispersion: float = 1e-9
    # gamma-contraction of the covariant derivative vs the Dirac operator
    contraction: float = 1e-12
    # Hermiticity validation before dense eigensolves
    hermiticity: float = 1e-10
    # Dirac potential off-site leakage: hard error above this
    potential_offsite_error: float = 1e-8
    # Dirac potential off-site leakage: report-level check
    potential_offsite: float = 1e-10
    # site-to-site variation of the Dirac potential blocks
    potential_constancy: float = 1e-10
    # per-site trace of the Dirac potential vs the mass-square trace
    potential_trace: float = 1e-9
    # density identity against the mean squared mass
    density_identity: float = 1e-12
    # curvature of the vacuum connection vs mass-square times xi wedge xi
    curvature: float = 1e-12
    # Wilson line flatness [A_a, A_b]
    wilson_flat: float = 1e-12
    # branch-resolved momentum shift under a Wilson line
    wilson_shift: float = 1e-9
    # entrywise invariance of the vacuum operator under unbroken gauge maps
    gauge_entry: float = 1e-12
    # spectrum invariance under arbitrary constant gauge maps
    gauge_spectrum: float = 1e-10

    def scale(self, factor):
        """Return a copy with every threshold multiplied by factor."""
        if factor <= 0:
            raise ValueError("tolerance scale factor must be positive")
        return Tolerances(**{f.name: getattr(self, f.name) * factor for f in fields(self)})

    def with_overrides(self, overrides):
        """Return a copy with named thresholds replaced."""
        if not overrides:
            return self
        known = {f.name for f in fields(self)}
        bad = sorted(set(overrides) - known)
        if bad:
            raise ValueError(f"unknown tolerance name(s): {', '.join(bad)}")
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update({k: float(v) for k, v in overrides.items()})
        return Tolerances(**values)


DEFAULT = Tolerances()
