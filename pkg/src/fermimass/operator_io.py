"""Self-describing dump formats for lattice operators and spectra.

Operator container (JSON text):

    {"format": "torus-lattice-operator", "schema_version": 1,
     "kind": "...", "n": 1, "sites_per_dim": 4, "spacing": 1.0,
     "derivative_kind": "fourier_spectral",
     "factor_dims": [n_sites, spinor_dim, internal_dim],
     "entries": [[re, im], ...]}

Entries are row-major over the full matrix, whose side is the product of
factor_dims.  Spectra are CSV files with header ``index,eigenvalue`` and
17 significant digits, sorted ascending.
"""

import json

import numpy as np

from .lattice_dirac import LatticeOperator, TorusLattice

OPERATOR_FORMAT = "torus-lattice-operator"
OPERATOR_SCHEMA_VERSION = 1


def dump_operator(op, path):
    """Write a lattice operator to a self-describing JSON container."""
    lat = op.lattice
    flat = op.matrix.reshape(-1)
    doc = {
        "format": OPERATOR_FORMAT,
        "schema_version": OPERATOR_SCHEMA_VERSION,
        "kind": op.kind,
        "n": lat.n,
        "sites_per_dim": lat.L,
        "spacing": lat.a,
        "derivative_kind": lat.derivative_kind,
        "factor_dims": [lat.n_sites, op.spinor_dim, op.internal_dim],
        "entries": [[float(v.real), float(v.imag)] for v in flat],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")


def load_operator(path):
    """Read a lattice operator dumped by dump_operator."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != OPERATOR_FORMAT:
        raise ValueError(f"{path}: not a {OPERATOR_FORMAT} container")
    if doc.get("schema_version") != OPERATOR_SCHEMA_VERSION:
        raise ValueError(f"{path}: unsupported schema_version {doc.get('schema_version')}")
    lat = TorusLattice(
        n=int(doc["n"]),
        L=int(doc["sites_per_dim"]),
        a=float(doc["spacing"]),
        derivative_kind=doc["derivative_kind"],
    )
    n_sites, spinor_dim, internal_dim = (int(v) for v in doc["factor_dims"])
    if n_sites != lat.n_sites:
        raise ValueError(f"{path}: factor_dims[0] = {n_sites} does not match L^2n = {lat.n_sites}")
    side = n_sites * spinor_dim * internal_dim
    entries = doc["entries"]
    if len(entries) != side * side:
        raise ValueError(f"{path}: expected {side * side} entries, found {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries])
    return LatticeOperator(
        flat.reshape(side, side), lat, spinor_dim, internal_dim, kind=doc.get("kind", "")
    )


def write_spectrum_csv(values, path):
    """Write eigenvalues to CSV, sorted ascending, 17 significant digits."""
    values = np.sort(np.asarray(values, dtype=float))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("index,eigenvalue\n")
        for i, v in enumerate(values):
            fh.write(f"{i},{v:.16e}\n")


def read_spectrum_csv(path):
    """Read a spectrum CSV written by write_spectrum_csv."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "index,eigenvalue":
            raise ValueError(f"{path}: unexpected header {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            _, value = line.split(",")
            out.append(float(value))
    return np.asarray(out)
