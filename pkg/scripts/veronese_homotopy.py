"""Track the Ver(2,2) example from the rank-one scaling to the all-ones scaling.

Writes the path to a CSV if a filename is given.
"""

import sys

from toricmle.families import veronese_rank1_start
from toricmle.fixtures import (
    VERONESE_EXAMPLE_DATA,
    VERONESE_EXAMPLE_EASY,
    to_s_first,
    veronese_example_model,
)
from toricmle.homotopy import track
from toricmle.ips import ips_solve

u = VERONESE_EXAMPLE_DATA
stat = veronese_example_model()
easy = veronese_example_model(VERONESE_EXAMPLE_EASY)

start = veronese_rank1_start(2, 2, [1, 1, 1], u)
print("start  (s, t1, t2):", [round(float(x), 4) for x in to_s_first(start)])
result, trace = track((easy, stat), u, start)
print("end    (s, t1, t2):", [round(float(x), 4) for x in to_s_first(result.theta_hat)])
print("p_hat:", [round(float(x), 4) for x in result.p_hat])
print(f"{trace.accepted} accepted / {trace.rejected} rejected steps, "
      f"{trace.newton_iterations} Newton iterations, final residual {trace.final_residual:.1e}")
ref = ips_solve(stat, u).p_hat
print(f"IPS agreement: {abs(result.p_hat - ref).max():.1e}")
if len(sys.argv) > 1:
    trace.write_csv(sys.argv[1])
