"""Smoke test for the qact_py extension.

Build first:  pip install --no-build-isolation -e crates/qact-py
"""

import math
import sys
from pathlib import Path

import qact_py

DATA = Path(__file__).resolve().parent.parent / "data"


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    code, report = qact_py.run(["haar", str(DATA / "functions_s3.json")])
    assert code == 0 and report["pass"], report
    assert all(close(re, 1 / 6) and im == 0 for re, im in report["data"]["phi"])

    code, report = qact_py.run(["free-check", str(DATA / "adjoint_m2.json")])
    assert code == 0 and report["data"]["free"] is False

    code, report = qact_py.run(["stabilize", str(DATA / "restriction_s3_z3.json")])
    assert code == 1 and not report["pass"]

    try:
        qact_py.run(["haar", "/no/such/file.json"])
    except ValueError as e:
        assert "cannot read" in str(e)
    else:
        raise AssertionError("missing file accepted")

    w = qact_py.chain_weights("oplus-quotient", 6, n=4)
    assert all(close(x, y) for x, y in zip(w, [1, 3, 1 / 3, 8 / 3])), w

    assert close(qact_py.qdim(2.5, 1), 5.25, 1e-10)
    assert close(qact_py.qdim(2.5, 0.5), 2.5)

    q = 0.25
    f = [[0, math.sqrt(q)], [-1 / math.sqrt(q), 0]]
    assert close(qact_py.c_invariant(f), -(q + 1 / q))
    assert close(qact_py.c_of_param([1, 0], [-1, 1], [2.0, 0.5]), q + 1 / q)
    assert qact_py.monoidally_equivalent(f, [[0, 2], [-0.5, 0]])
    assert not qact_py.monoidally_equivalent(f, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    print("python smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
