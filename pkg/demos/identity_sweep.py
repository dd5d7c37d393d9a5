"""Run a handful of named identity checks and print their report lines.

Same entry points the CLI uses; each report carries its check count and
wall time, and a first counterexample when something fails.
"""

from ternlat.catalog import DIAG_1_1_2, DIAG_1_1_16, DIAG_1_2_9
from ternlat.harness import eligible_bases, run_check

jobs = [
    ("lemma2.6", DIAG_1_1_2, 3, None, 120),
    ("prop2.10", DIAG_1_2_9, 3, None, 120),
    ("prop2.11", DIAG_1_2_9, 3, None, 120),
    ("prop3.7", DIAG_1_1_16, 11, None, None),
    ("thm4.3", DIAG_1_1_2, 3, None, 120),
    ("thm4.5", DIAG_1_1_16, 11, None, 120),
    ("thm4.6", DIAG_1_1_2, 3, None, 120),
    ("thm4.8", DIAG_1_1_2, 3, None, 100),
    ("thm4.8-negative", DIAG_1_1_2, 3, None, 40),
    ("thm4.9", DIAG_1_1_2, 3, 3, 60),
    ("watson2.1", DIAG_1_1_2, 2, None, 200),
]
for check_id, lat, p, level, n_max in jobs:
    rep = run_check(check_id, lat, p, level, n_max)
    print(rep.line())

# the same sweep style scales to a corpus slice
print("\nlemma2.6 over the smallest eligible bases:")
for lat, p in list(eligible_bases(primes=(3, 5), cmax=2))[:8]:
    print(run_check("lemma2.6", lat, p, None, 60).line())
