#!/usr/bin/env python3
"""Re-verifies the certificate in a copcone report: python3 check_report.py report.json"""
import json, sys
import numpy as np

rep = json.load(open(sys.argv[1]) if len(sys.argv) > 1 else sys.stdin)
M, r, ok = np.array(rep["inputs"][0]["matrix"], float), rep["result"], True
tol = 1e-8 * max(1.0, abs(M).max())
H = np.array([[1, -1, 1, 1, -1], [-1, 1, -1, 1, 1], [1, -1, 1, -1, 1], [1, 1, -1, 1, -1], [-1, 1, 1, -1, 1]], float)
c = r.get("certificate") or {}
if "factor" in r or c.get("kind") == "factor":
    V = np.array((r.get("factor") or c["factor"])["columns"], float).T.reshape(M.shape[0], -1)
    ok &= bool((V >= 0).all() and abs(V @ V.T - M).max() <= tol)
if c.get("kind") in ("violation_vector", "negative_curvature"):
    x = np.array(c.get("x") or c["vector"], float)
    ok &= bool(x @ M @ x < 0 and (c["kind"] == "negative_curvature" or (x >= 0).all()))
if c.get("kind") == "negative_entry":
    ok &= bool(M[c["i"], c["j"]] < 0)
w = (r.get("class") or {}).get("witness")
if w and (r["class"]["tag"] == "HORN_ORBIT"):
    D, p = np.diag(w["d"]), w["perm"]
    ok &= bool(abs(D @ H[np.ix_(p, p)] @ D - M).max() <= tol)
print("OK" if ok else "FAIL")
sys.exit(0 if ok else 1)
