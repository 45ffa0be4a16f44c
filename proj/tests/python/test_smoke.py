"""Smoke tests for the _quadradyn extension module."""

import json
import math
import sys

import _quadradyn as q

failures = []


def check(ok, what):
    if not ok:
        failures.append(what)


def main():
    # Classification round trip through the JSON envelope.
    env = json.loads(q.classify(json.dumps({"family": "I", "c": 1.0})))
    check(env["version"].startswith("quadradyn"), "envelope version")
    pts = env["result"]["critical_points"]
    check(len(pts) == 1 and pts[0]["label"] == "Cusp", "family I cusp")
    check(pts[0]["trace"] == "Thm2.2(1.ii)", "cusp trace")

    env5 = json.loads(
        q.classify(
            json.dumps({"family": "V", "b": 1.0, "c": 1.0, "s": 2}),
            infinity=True,
        )
    )
    labels = [p["label"] for p in env5["result"]["critical_points"]]
    check(labels == ["UnstableNode", "Saddle"], "family V labels")
    check(
        any(p["chart"] == "U2" for p in env5["result"]["infinite_points"]),
        "infinite points present",
    )

    # Invalid specs surface as ValueError.
    try:
        q.classify(json.dumps({"family": "I", "c": 0.0}))
        check(False, "invalid spec must raise")
    except ValueError:
        pass

    # Region membership.
    region = json.loads(q.region_of(1.0, 1.0, 10.0))
    check(region["r_label"] == "R1", "region R1")
    check(json.loads(q.region_of(1.0, -1.0, 2.0))["r_label"] == "R8", "region R8")

    # Transcritical event at b = 0.
    events = json.loads(q.sweep_events(0.0, 1.0, 2.0, "b", -1.0, 1.0, 41))
    tc = [e for e in events if e["kind"] == "Transcritical"]
    check(len(tc) == 1 and abs(tc[0]["parameter_value"]) <= 1e-8, "transcritical")

    # First integral of family II: y - b x^2.
    fi = json.loads(q.first_integral(json.dumps({"family": "II", "b": 1.0})))
    check(fi["kind"] == "LinearInY", "integral kind")
    terms = {(t["i"], t["j"]): t["c"] for t in fi["expression"]["terms"]}
    check(terms == {(0, 1): 1.0, (2, 0): -1.0}, "integral expression")

    # wp on the degenerate lattice is 1/t^2.
    p, dp = q.wp_eval(0.5, 0.0, 0.0)
    check(abs(p - 4.0) <= 1e-12 and abs(dp + 16.0) <= 1e-12, "wp degenerate")
    try:
        q.wp_eval(1e-9, 1.0, 1.0)
        check(False, "wp pole must raise")
    except ArithmeticError:
        pass

    # Integration: family II from (0, 1) is x = tan(t).
    spec2 = json.dumps({"family": "II", "b": 1.0})
    samples = q.integrate(spec2, 0.0, 1.0, 1.0, step=1e-3)
    t, x, y = samples[-1]
    check(abs(t - 1.0) <= 1e-12, "integrate endpoint time")
    check(abs(x - math.tan(1.0)) <= 1e-6, "integrate tangent")

    # Portrait SVG is structurally sound.
    svg = q.portrait_svg(
        json.dumps({"family": "V", "b": 1.0, "c": 1.0, "s": 2}),
        disk=True,
        seeds=3,
    )
    check("<svg" in svg and 'class="equator"' in svg, "portrait svg")
    check('class="glyph Saddle"' in svg, "portrait saddle glyph")

    if failures:
        for f in failures:
            print("FAIL", f)
        return 1
    print("OK", "python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
