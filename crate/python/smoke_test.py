#!/usr/bin/env python3
"""Smoke test for the segal_py extension module.

Builds nothing itself: it loads the cdylib produced by `cargo build -p
segal-py` (debug or release) and drives the bindings end to end.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libsegal_py.so",
        ROOT / "target" / "debug" / "libsegal_py.so",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("build the extension first: cargo build -p segal-py")
    newest = max(built, key=lambda p: p.stat().st_mtime)
    stage = Path(tempfile.mkdtemp(prefix="segal_py_"))
    shutil.copy2(newest, stage / "segal_py.so")
    sys.path.insert(0, str(stage))
    import segal_py

    return segal_py


checks = 0


def check(label, got, want=None):
    global checks
    if want is None:
        assert got, label
    else:
        assert got == want, f"{label}: {got!r} != {want!r}"
    checks += 1
    print(f"ok: {label}")


def main():
    sp = load_module()

    s1 = sp.SimplicialSet.circle(3)
    check("circle homology", s1.homology(2), [(1, []), (1, []), (0, [])])
    check("circle pi1 is free of rank one", s1.pi1(), (1, [], None, (1, [])))
    check("circle is not Kan", json.loads(s1.kan_check(2))["verdict"], "REFUTED")

    torus = s1.product(s1)
    check("torus homology", torus.homology(2), [(1, []), (2, []), (1, [])])

    sphere = sp.SimplicialSet.boundary(3, 3)
    check("sphere homology", sphere.homology(2), [(1, []), (0, []), (1, [])])

    z2 = sp.FiniteGroup.cyclic(2)
    bz2 = sp.SimplicialSet.classifying_space(z2, 5)
    check(
        "classifying space homology of Z/2",
        bz2.homology(3),
        [(1, []), (0, ["2"]), (0, []), (0, ["2"])],
    )
    check("classifying space is Kan", json.loads(bz2.kan_check(3))["verdict"], "CERTIFIED")
    _, _, order, ab = bz2.pi1()
    check("pi1 of the classifying space has order 2", (order, ab), (2, (0, ["2"])))

    s3 = sp.FiniteGroup.symmetric(3)
    check("S3 order and commutativity", (s3.order, s3.is_abelian), (6, False))
    check("group JSON roundtrip", sp.FiniteGroup.from_json(s3.to_json()).order, 6)

    check("bar of Z/2 is a Segal group", sp.check_bar_is_segal_group(z2, 3, 2), sp.CERTIFIED)
    check("bar of S3 is a Segal group", sp.check_bar_is_segal_group(s3, 3, 2), sp.CERTIFIED)

    circle4 = sp.SimplicialSet.circle(4)
    xg = sp.GSpace.trivial(circle4, z2)
    un = json.loads(xg.unstraighten(3, 2))
    check("unstraightened circle action is accepted", un["verdict"] != "REFUTED")
    check(
        "borel of the trivial circle action",
        xg.borel().homology(2),
        [(1, []), (1, ["2"]), (0, ["2"])],
    )

    tr = sp.GSpace.translation(z2, 4)
    check("translation quotient is a point", tr.quotient().homology(1), [(1, []), (0, [])])
    check(
        "translation homotopy quotient is contractible in range",
        tr.borel().homology(2),
        [(1, []), (0, []), (0, [])],
    )

    report, code = sp.run_job("build", ["circle"], truncation=3)
    check("run_job build exits zero", code, 0)
    check("build report counts", json.loads(report)["payload"]["counts"], [1, 1, 0, 0])
    report2, _ = sp.run_job("build", ["circle"], truncation=3)
    check("reports are byte identical", report == report2)

    with tempfile.TemporaryDirectory() as td:
        path = Path(td) / "circle.json"
        path.write_text(s1.to_json())
        hreport, hcode = sp.run_job("homology", [str(path)], up_to=2)
        rows = json.loads(hreport)["payload"]["homology"]
        check("run_job homology of a JSON input", (hcode, rows[1]["rank"]), (0, 1))

    _, bad = sp.run_job("no-such-command")
    check("unknown command exits three", bad, 3)

    try:
        sp.SimplicialSet.from_json('{"truncation": 1, "generators": [["a"], ["x"]]}')
        raise AssertionError("invalid presentation was accepted")
    except ValueError as e:
        check("invalid presentation is rejected with the generator named", "x" in str(e))

    print(f"all {checks} smoke checks passed")


if __name__ == "__main__":
    main()
