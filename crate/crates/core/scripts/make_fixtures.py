#!/usr/bin/env python3
"""Regenerates crates/core/fixtures. Every value is a small dyadic rational,
so the files are exact and the script is idempotent."""
import json
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

H = np.array([[1, -1, 1, 1, -1],
              [-1, 1, -1, 1, 1],
              [1, -1, 1, -1, 1],
              [1, 1, -1, 1, -1],
              [-1, 1, 1, -1, 1]], dtype=float)


def generators():
    W = np.zeros((6, 6))
    for k in range(5):
        W[k, k] = W[(k + 1) % 5, k] = 1
    W[5, 5] = 1
    return W


def write(name, data=None, factor=None, comment=None):
    doc = {}
    n = (data if data is not None else factor).shape[0]
    doc["n"] = int(n)
    if data is not None:
        doc["data"] = data.tolist()
    if factor is not None:
        doc["factor"] = factor.tolist()
    if comment:
        doc["comment"] = comment
    # one matrix row per line
    parts = []
    for k, v in doc.items():
        if isinstance(v, list):
            rows = ",\n    ".join(json.dumps(r) for r in v)
            parts.append(f'  "{k}": [\n    {rows}\n  ]')
        else:
            parts.append(f'  "{k}": {json.dumps(v)}')
    (OUT / name).write_text("{\n" + ",\n".join(parts) + "\n}\n")


W = generators()
hplus0 = np.zeros((6, 6))
hplus0[:5, :5] = H

# two columns per cone {g_i, g_i+1, g_5}, positive coefficients; rank 6
coef = [(0, 1, 0.5, 0.25), (1, 0.5, 1, 0.5), (2, 1, 1, 1), (3, 0.25, 0.5, 1), (4, 2, 1, 0.5),
        (0, 0.5, 2, 1), (1, 1, 0.25, 0.5), (2, 0.5, 0.5, 2), (3, 1, 2, 0.25), (4, 0.25, 1, 1)]
V = np.column_stack([a * W[:, i] + b * W[:, (i + 1) % 5] + c * W[:, 5] for i, a, b, c in coef])
assert np.linalg.matrix_rank(V @ V.T) == 6 and (V @ V.T > 0).all()

d = np.array([1, 2, 0.5, 4, 0.25])
perm = [2, 4, 0, 1, 3]
scaled = np.diag(d) @ H[np.ix_(perm, perm)] @ np.diag(d)

E12 = np.zeros((4, 4))
E12[0, 1] = E12[1, 0] = 1
de = np.array([2, 0.5, 1, 1])
e12 = np.diag(de) @ E12[np.ix_([1, 2, 0, 3], [1, 2, 0, 3])] @ np.diag(de)

OUT.mkdir(exist_ok=True)
write("horn.json", H, comment="Horn matrix")
write("hornplus0.json", hplus0, comment="Horn matrix padded with a zero row and column")
write("w.json", factor=W, comment="generator matrix W; the matrix is W W^T")
write("wwt.json", W @ W.T)
write("horn_orth.json", W @ W.T, W, comment="W W^T with factor W, orthogonal to Horn + 0")
write("m.json", V @ V.T, comment="entrywise positive, orthogonal to Horn + 0")
write("m_factor.json", factor=V, comment="a 10-column factor of m.json")
write("scaled_horn.json", scaled, comment="D P^T H P D with D = diag(1, 2, 0.5, 4, 0.25)")
write("e12.json", e12, comment="scaled and permuted E12")
write("dd_example.json", np.array([[2.0, 1.0], [1.0, 2.0]]))
write("j2.json", np.ones((2, 2)))
write("zero.json", np.zeros((3, 3)))
write("identity6.json", np.eye(6))
write("identity6_factor.json", factor=np.eye(6))
(OUT / "horn.txt").write_text("5\n" + "\n".join(" ".join(f"{int(v):2d}" for v in r) for r in H) + "\n")
