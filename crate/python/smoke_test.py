"""Smoke test for the pygrassbwb extension.

Build and expose the module, then run this script:

    cargo build --release -p grassbwb-py
    cp target/release/libpygrassbwb.so /tmp/pygrassbwb.so
    PYTHONPATH=/tmp python3 python/smoke_test.py

or `pip install ./crates/python` when maturin is available.
"""

import json

import pygrassbwb as g


def main():
    r = g.bwb("wedge(2,sym(3,U)) * sym(2,U) * H(1)")
    assert r["totals"] == {"4": 36}, r["totals"]

    assert g.integrate("s1^4 * classF") == 108
    assert g.schubert("chern(4, sym(3, dual(U)))") == "27σ_{2,2} + 18σ_{3,1}"
    assert g.decompose("wedge(2, sym(3, V)) * sym(2, V)", 2) == [
        ([5, 3], 2),
        ([6, 2], 1),
        ([7, 1], 1),
    ]
    assert g.weyl_dimension([-2, -2, -2, -2, -4, -6]) == 1134

    page = {"max_total_degree": 4, "entries": [[-4, 8, 1134], [-3, 8, 126]]}
    assert g.abutment(json.dumps(page)) == {"forced": {"dims": {"4": 1008}}}

    inv = g.surface_invariants()
    assert (inv["c2_C"], inv["KS_sq"], inv["chi_O"]) == (495, 2835, 450)

    h = g.hodge_numbers()
    assert (h["q"], h["p_g"], h["h11"], h["b2"]) == (0, 449, 1665, 2563)

    report = g.reproduce()
    failed = [c["name"] for c in report["checks"] if not c["pass"]]
    assert not failed, failed

    try:
        g.bwb("sym(2, U*Q)")
    except ValueError as e:
        assert "parse error" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print(f"pygrassbwb {g.__version__}: {len(report['checks'])} checks passed")


if __name__ == "__main__":
    main()
