"""Turnover of the steep single-mode interface (initial sup slope 50).

Runs the CONJ_TURNOVER scenario: forward evolution that stops once the
minimum slope drops below the turnover watermark.  Prints the norm history
tail and the first time the curve leaves the stable regime.

usage: python3 scripts/slope50_turnover.py [n] [out_dir]
"""

import sys

from muskat.diagnostics import norm_series
from muskat.scenario import RunConfig, run_scenario

n = int(sys.argv[1]) if len(sys.argv) > 1 else 512
out = sys.argv[2] if len(sys.argv) > 2 else "out/slope50_turnover"

manifest = run_scenario(RunConfig(scenario="CONJ_TURNOVER", n=n, out_dir=out))
print(f"status  {manifest.status}")
if manifest.trajectory is None:
    print(f"error   {manifest.error}")
    sys.exit(1)

series = norm_series(manifest.trajectory)
print(f"initial sup|f| = {series.sup_f[0]:.6f}, "
      f"sup slope = {series.sup_slope[0]:.6f}")
for t, sf, ss in list(zip(series.times, series.sup_f, series.sup_slope))[-5:]:
    print(f"t = {t:+.4e}  sup|f| = {sf:.6f}  sup slope = {ss}")

overturns = [t for t, k in manifest.events if k == "ENTER_UNSTABLE"]
if overturns:
    print(f"left the stable regime at t = {overturns[0]:.6e}")
else:
    print("no overturn before the stop time")

sys.exit(0 if manifest.status == "OK" else 1)
