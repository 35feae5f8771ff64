"""Smoke tests for the hsint python module (run by ctest with PYTHONPATH set)."""

import math
import sys

import hsint


def check(name, ok):
    print(("PASS" if ok else "FAIL"), name)
    if not ok:
        sys.exit(1)


def main():
    check("version", isinstance(hsint.__version__, str))

    # exact solution branches
    check("hs_exact ramp", hsint.hs_exact(0.5, 0.0) == 0.5)
    check("hs_exact left", hsint.hs_exact(-1.0, 0.3) == 0.0)
    check("hs_exact plateau", hsint.hs_exact(9.0, 2.0) == 2.0)

    # travelling waves reproduce the reference periods
    mhs = hsint.generate_wave("mhs", 128, omega=1.5, m=-0.1, M=0.5, c=1.0)
    check("mhs period", abs(mhs["period"] - 3.2151) <= 1e-3)
    check("mhs samples", len(mhs["phi"]) == 128 and min(mhs["phi"]) >= -0.1 - 1e-9)

    hs2 = hsint.generate_wave("hs2", 128, b=1.0, z=-1.0, Z=1.0, c=2.0)
    check("hs2 period", abs(hs2["period"] - 12.5663) <= 1e-3)
    check("hs2 density", abs(hs2["a"] - math.sqrt(3.0)) == 0.0)

    # a short eb1 run keeps the first Hamiltonian near 0.5
    result = hsint.run(
        {
            "problem": "hs",
            "scheme": "eb1",
            "L": 6,
            "N": 201,
            "dt": 0.01,
            "tend": 0.1,
        }
    )
    check("run rows", len(result["t"]) == 11)
    # the discrete H1 of the sampled initial data is 0.48694 at this
    # resolution (kink cells); the run should keep it flat
    check("run H1 flat", all(abs(h - result["H1"][0]) <= 2e-3 for h in result["H1"]))
    check("run H1 level", abs(result["H1"][0] - 0.48694) <= 1e-4)
    check("run profile", len(result["profile"]["x"]) == 202)
    check("run no failure", "failure" not in result)

    # invalid configs are rejected
    try:
        hsint.run({"problem": "hs", "scheme": "ms", "L": 6, "N": 201, "dt": 0.01, "tend": 0.1})
        check("invalid scheme rejected", False)
    except Exception:
        check("invalid scheme rejected", True)

    print("smoke test ok")


if __name__ == "__main__":
    main()
