#!/usr/bin/env python3
"""Re-verify the certificate in a copcone report: check_certificate.py REPORT MATRIX_FILE"""
import json, sys
import numpy as np

rep, f = (json.load(open(p)) for p in sys.argv[1:3])
M = np.array(f["data"], float).reshape(f["n"], f["n"]) if "data" in f else (lambda V: V @ V.T)(np.array(f["factor"], float))
tol = 1e-9 * (1 + abs(M).max())
body = rep.get("verdict") or rep.get("factorization") or {}
certs = [c for c in (body.get("certificate"), body.get("interior")) if c]
for c in certs:
    t = c["type"]
    if t in ("violation_vector", "boundary_zero"):
        x = np.array(c["x"]); q = x @ M @ x
        ok = abs(q - c["value"]) <= tol and (q < -tol if t == "violation_vector" else abs(q) <= tol)
        ok &= body.get("cone") == "PSD" or (x.min() >= 0 and abs(x.sum() - 1) <= 1e-9)
    elif t == "negative_entry":
        ok = M[c["row"], c["col"]] == c["value"] < 0
    else:
        V = np.array(c["factor"], float).reshape(M.shape[0], -1)
        rtol = 1e-7 if body.get("method") == "heuristic" else 1e-8
        ok = V.min() >= 0 and abs(V @ V.T - M).max() <= rtol * (1 + abs(M).max())
        if t == "interior":
            ok &= V[:, c["positive_column"]].min() > 0 and np.linalg.matrix_rank(V) == M.shape[0]
    print(t, "OK" if ok else "FAILED")
    if not ok: sys.exit(1)
print(len(certs), "certificate(s) verified")
