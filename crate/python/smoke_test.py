"""Smoke test for the pcfheight extension.

    pip install -e crates/python --no-build-isolation
    python python/smoke_test.py
"""

import math
import sys

import pcfheight


def check(name, cond):
    print(("ok   " if cond else "FAIL ") + name)
    return bool(cond)


def main():
    results = []

    h = pcfheight.canonical_height("z^2", "2")
    results.append(check("h_{z^2}(2) encloses log 2", h["lo"] <= math.log(2) <= h["hi"]))

    h = pcfheight.canonical_height("z^2 - 2z", "1+sqrt(2)")
    results.append(check("1 + sqrt 2 is preperiodic for z^2 - 2z", h["exact"] == "[0, 0]"))

    try:
        pcfheight.canonical_height("z^2 - 1", "1/3")
        results.append(check("bounded real orbit raises UndecidedError", False))
    except pcfheight.UndecidedError:
        results.append(check("bounded real orbit raises UndecidedError", True))

    report = pcfheight.height_report("z^2 + 1/6", "7/5")
    places = [l["place"] for l in report["locals"]]
    results.append(check("per-place report lists inf first", report["complete"] and places[0] == "inf"))

    try:
        pcfheight.canonical_poly("z^^2")
        results.append(check("parse errors raise ValueError", False))
    except ValueError:
        results.append(check("parse errors raise ValueError", True))

    results.append(check("z^3 - 3z is PCF", pcfheight.certify(cubic=("-3", "0"))["label"] == "pcf"))
    results.append(check("z^3 + z + 1 is not PCF", pcfheight.certify(cubic=("1", "1"))["label"] == "not_pcf"))
    results.append(check("z^2 - 2 is PCF", pcfheight.certify(quadratic="-2")["label"] == "pcf"))

    quad = pcfheight.enumerate_quadratics()
    results.append(check("quadratic search finds {-2, -1, 0}", quad["pcf"] == ["-2", "-1", "0"]))

    cubic = pcfheight.enumerate_cubics()
    survivors = [s["survivors"] for s in cubic["stage_counts"]]
    pairs = {(p["A"], p["B"]) for p in cubic["pcf"]}
    results.append(check("cubic search: 3895 candidates, 86 after the archimedean sieve", survivors[0] == 3895 and 86 in survivors))
    results.append(check("cubic search finds 7 PCF pairs", len(pairs) == 7 and ("-3/4", "3/4") in pairs))

    weak = pcfheight.enumerate_cubics(n_arch=5, workers=2)
    results.append(check("weaker sieve, same pairs", {(p["A"], p["B"]) for p in weak["pcf"]} == pairs))

    rows = pcfheight.family_scan("unicritical", 3, ["10", "1000", "1000000"])
    ratios = [(r["ratio"]["lo"] + r["ratio"]["hi"]) / 2 for r in rows]
    gaps = [abs(x - 2 / 3) for x in ratios]
    results.append(check("unicritical ratios tend to 2/3", gaps == sorted(gaps, reverse=True) and gaps[-1] < 1e-9))
    results.append(check("empty family scan", pcfheight.family_scan("superattracting", 3, []) == []))

    print(f"{sum(results)}/{len(results)} checks passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
