"""
Driving everything from the command line
========================================

Scenario files describe the whole setup - degree group, ring, ideal,
module, coarsening map, windows, caps - in a small block format, and the
`coarsecoh` tool runs any of the computations against them.  This script
shells out to the module entry point so the exit-code contract is visible:

    0  computed / COMMUTES_ON_WINDOW
    1  unparseable or semantically broken scenario, usage errors
    2  a checked property FAILS, witnesses in the report
    3  a limit stayed uncertified within its cap (UNSTABILIZED)
    4  a fiber sum was refused for lack of a support certificate
"""

import subprocess
import sys
from pathlib import Path

root = Path(__file__).parent.parent
scn = str(root / "scenarios" / "fine-plane.scn")


def run(*args):
    cmd = [sys.executable, "-m", "coarsecoh.cli", *args]
    print("$ coarsecoh " + " ".join(args))
    proc = subprocess.run(cmd, capture_output=True, text=True)
    out = proc.stdout.strip() or proc.stderr.strip()
    for line in out.splitlines():
        print("  " + line)
    print("  [exit %d]\n" % proc.returncode)
    return proc


# a dimension table, default TSV on stdout
run("hilbert", scn)

# the torsion submodule with its per-degree certified powers, as JSON
run("gamma", scn, "--json")

# local cohomology by the tower route
run("lc", scn, "--i", "1", "--route", "ext")

# the module's own table carries generator degrees, so the sum map's
# infinite kernel is no obstacle: route "support-generators"
run("coarsen", scn)

# cohomology tables above level zero carry no such data; over an
# infinite kernel the commutation check is refused (exit 4) unless
# window coverage is explicitly assumed
run("check-commute", scn, "--i", "1")
run("check-commute", scn, "--i", "1", "--assume-support-covered")

# the mixed scenario has a finite kernel: no flag needed, full check
run("check-commute", str(root / "scenarios" / "mixed-plane.scn"), "--i", "0,2")
