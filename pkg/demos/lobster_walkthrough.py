"""Walk through the component (13/31, 18/31): kneading, conspicuous
components, the R/Q sets and a few marker chains.

Run with ``python demos/lobster_walkthrough.py``. Writes ``lobster.svg``
next to this file.
"""

from fractions import Fraction
from pathlib import Path

from pseudomonodromy.components import conspicuous_components, pair_periodic_angles, return_times
from pseudomonodromy.lamination import rq_trace, structural_checks
from pseudomonodromy.render import RenderSpec, render_svg
from pseudomonodromy.report import format_arcs
from pseudomonodromy.verify import compare_codings, disc_contains, marker_decomposition, verify_main_theorem

pool = pair_periodic_angles(8)
h = pool.find(Fraction(13, 31), Fraction(18, 31))
print(h, "K^ =", h.discarded)

family = conspicuous_components(h, pool)
print("conspicuous:", ", ".join(str(c) for c in family))
print("return times:", return_times(h, pool))

# the R_n sets, numerators over 62
trace = rq_trace(h, pool)
d = trace.denominator
for n in range(1, h.period + 1):
    print(f"R_{n} =", format_arcs(trace.R[n], d, trace.endpoint_marks[n]))

rep = verify_main_theorem(h, pool)
print("covered:", rep.covered, "residual:", [str(x) for x in rep.residual_points])
print("structural checks pass:", structural_checks(h, pool=pool).ok)

for theta in (Fraction(1, 3), Fraction(100, 1023), Fraction(1, 5)):
    if not disc_contains(h, theta):
        print(theta, "not in Disc")
        continue
    m = marker_decomposition(h, theta, pool)
    diffs = compare_codings(h, theta)
    print(theta, "chain", m, "markers", m.markers(), "differences at", [p for p, _, _ in diffs])

out = Path(__file__).with_name("lobster.svg")
out.write_text(render_svg(RenderSpec(h), pool))
print("wrote", out)
