"""Forward run from a backward terminal snapshot, across t = 0.

Reads a snapshot produced by scripts/backward_turning.py, restarts the
unregularized dynamics at its (negative) time stamp and integrates forward
past zero.  The interesting output is the sequence of stability flips: the
curve should re-enter the stable window before t = 0 and leave it again
after, so the run prints the flip times and the collapsed regime pattern.
"""

import argparse

from muskat.diagnostics import REGIME_CRITICAL, regime_timeline
from muskat.scenario import RunConfig, run_scenario


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("snapshot", help="terminal snapshot of a backward run")
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--t-final", type=float, default=None,
                    help="forward horizon (default 6e-2)")
    ap.add_argument("--out", default="out/forward_rerun")
    args = ap.parse_args()

    cfg = RunConfig(scenario="FORWARD_RERUN", n=args.n, t_final=args.t_final,
                    input_snapshot=args.snapshot, out_dir=args.out)
    manifest = run_scenario(cfg)
    print(f"status  {manifest.status}")
    if manifest.trajectory is None:
        print(f"error   {manifest.error}")
        return 1

    flips = tuple((t, k) for t, k in manifest.events if k.startswith("ENTER_"))
    for t, kind in flips:
        print(f"event   {kind:>14s} at t = {t:+.6e}")

    # collapse critical slivers and repeats down to the regime pattern
    pattern = []
    for _, reg in regime_timeline(manifest.trajectory, events=flips):
        if reg != REGIME_CRITICAL and (not pattern or pattern[-1] != reg):
            pattern.append(reg)
    print("pattern " + " -> ".join(pattern))
    return 0 if manifest.status == "OK" else 1


if __name__ == "__main__":
    raise SystemExit(main())
