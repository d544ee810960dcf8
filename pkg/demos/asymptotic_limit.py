"""Convergence to the Vlasov-Ampere limit and damping of ill-prepared data.

Part one compares the full scheme at growing c with the limit scheme
(E2 = B = 0, gamma = 1) started from the same data. Part two starts from a
magnetic field of size one, far from the limit, and shows that two steps at
dt = 0.1 remove it once c is large.
"""

# %%
import numpy as np

from apvm import FieldState, RunConfig, run_convergence_in_c
from apvm.vlasov import step

cfg = RunConfig(scenario="landau", relativistic=True, nx=16, np1=64, np2=64)
table = run_convergence_in_c(cfg, [1, 5, 25, 125, 625, 3125])
print("     c     B error   rate     f error   rate")
for row in table.rows:
    c, b, rb, f, rf = row[0], row[5], row[6], row[7], row[8]
    print(f"{c:6.0f} {b:11.3e} {rb:6.2f} {f:11.3e} {rf:6.2f}")

# %% ill-prepared data
for c in (10.0, 100.0, 1000.0):
    s = RunConfig(scenario="landau", c=c, nx=16, np1=64, np2=64).initial_state()
    s = s.replace(fields=FieldState(s.fields.E1, s.fields.E2, np.sin(0.4 * s.grid.x)))
    for _ in range(2):
        s = step(s, 0.1)
    print(f"c = {c:6.0f}: max |B| after two steps {np.max(np.abs(s.fields.B)):.3e}")
