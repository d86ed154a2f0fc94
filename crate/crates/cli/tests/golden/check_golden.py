"""Independent numpy recomputation of the pinned sweep CSVs.

Usage: python3 check_golden.py field_anisotropy.csv temperature_negativity.csv
Log base per file is given by LOG_BASE below.
"""
import csv
import sys

import numpy as np

LOG_BASE = {"field_anisotropy.csv": np.e, "temperature_negativity.csv": 10.0}

s2 = np.sqrt(2)
sx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) / s2
sy = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]) / s2
sz = np.diag([1, 0, -1]).astype(complex)
I3 = np.eye(3)


def hamiltonian(J, K, D, B):
    A = np.kron(sx, sx) + np.kron(sy, sy) + D * np.kron(sz, sz)
    return J * A + K * A @ A + B * (np.kron(sz, I3) + np.kron(I3, sz))


def gibbs(h, T):
    w, v = np.linalg.eigh(h)
    e = np.exp(-(w - w.min()) / T)
    return (v * e) @ v.conj().T / e.sum()


def partial_transpose(r):
    return r.reshape(3, 3, 3, 3).transpose(2, 1, 0, 3).reshape(9, 9)


def realign(r):
    # Reshape-based reshuffle rather than the block loop; same singular values.
    return r.reshape(3, 3, 3, 3).transpose(0, 2, 1, 3).reshape(9, 9)


worst = 0.0
for path in sys.argv[1:]:
    base = LOG_BASE[path.rsplit("/", 1)[-1]]
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            J, K, D, B, T = (float(row[k]) for k in ("J", "K", "Delta", "B", "T"))
            rho = gibbs(hamiltonian(J, K, D, B), T)
            pt = np.linalg.eigvalsh(partial_transpose(rho))
            want = {
                "negativity": -pt[pt < -1e-12].sum(),
                "pt_min_eig": pt[0],
            }
            tn = np.linalg.svd(realign(rho), compute_uv=False).sum()
            want["trace_norm"] = tn
            want["R"] = np.log(tn) / np.log(base)
            for key, value in want.items():
                if row[key] == "":
                    continue
                err = abs(float(row[key]) - value)
                worst = max(worst, err)
                assert err < 1e-12, (path, row, key, value)
print("max deviation", worst)
