"""
The counterexample gallery
==========================

Each demo builds a small instance and checks a negative result:
continuity and monotonicity of allocation policies both fail, Jain can
pick dominated points and can reward adding worse options.
"""
from paretogauge import demos, index_opt
from paretogauge.indexes import ARITHMETIC, GEOMETRIC

for name, run in {**demos.GALLERY_DEMOS, **demos.CONTROL_DEMOS}.items():
    report = run()
    kind = "gallery" if name in demos.GALLERY_DEMOS else "control"
    print(f"[{kind:>7}] {name}: passed={report.passed}")
    print(f"          {report.narrative[:160]}")

###############################################################################
# Where along the path does the choice flip?
# ------------------------------------------

for f in (GEOMETRIC, ARITHMETIC):
    r = demos.demo_pareto_policy_jump(index_opt(f))
    print(f.label, "switches at t =", round(demos.crossing_point(r), 3))
