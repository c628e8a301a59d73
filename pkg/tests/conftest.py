import numpy as np
import pytest

from fermimass import HiggsModel, LieAlgebraRep, ew_reference, mass_matrix, minimize

S1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
S2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
S3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def su2_doublet(label="doublet"):
    return LieAlgebraRep(
        generators=(-0.5j * S1, -0.5j * S2, -0.5j * S3), label=label
    )


def ew_rep(hypercharge, dim, label):
    """su(2)+u(1) representation: doublet or singlet with a hypercharge."""
    if dim == 2:
        gens = (-0.5j * S1, -0.5j * S2, -0.5j * S3, -1.0j * hypercharge * np.eye(2))
    else:
        zero = np.zeros((1, 1), dtype=complex)
        gens = (zero, zero, zero, -1.0j * hypercharge * np.eye(1))
    return LieAlgebraRep(generators=gens, label=label)


@pytest.fixture(scope="session")
def ew_cfg():
    return ew_reference()


@pytest.fixture(scope="session")
def ew_higgs(ew_cfg):
    return ew_cfg.build_higgs_model()


@pytest.fixture(scope="session")
def ew_vac(ew_cfg, ew_higgs):
    return minimize(ew_higgs, ew_cfg.higgs_seed())


@pytest.fixture(scope="session")
def ew_frep(ew_cfg):
    return ew_cfg.build_fermion_rep()


@pytest.fixture(scope="session")
def ew_ymap(ew_cfg, ew_frep):
    return ew_cfg.build_yukawa(ew_frep)


@pytest.fixture(scope="session")
def ew_md(ew_ymap, ew_vac):
    return mass_matrix(ew_ymap, ew_vac)


def ew_perturbed_objects(y_right):
    """Rebuilt electroweak objects with a perturbed right hypercharge."""
    cfg = ew_reference(y_right=y_right)
    higgs = cfg.build_higgs_model()
    frep = cfg.build_fermion_rep()
    ymap = cfg.build_yukawa(frep)
    return cfg, higgs, frep, ymap


def mexican_hat_on(rep, lam=1.0, v=2.0):
    return HiggsModel(rep=rep, potential_kind="mexican_hat", params=(lam, v))
