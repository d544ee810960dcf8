"""Landau damping in the quasi-neutral, large-c regime.

A weakly perturbed Maxwellian at k = 0.4 damps its electric field at the rate
-0.0661. With c = 100 the light waves are stiff; Radau IIA damps them and the
electrostatic behaviour survives. Pass ``--full`` for the 64 x 256^2 grid
(several minutes); the default grid takes well under a minute.
"""

# %%
import sys

import numpy as np

from apvm import RunConfig, run
from apvm.diagnostics import envelope_rate

full = "--full" in sys.argv
grid = dict(nx=64, np1=256, np2=256) if full else dict(nx=16, np1=64, np2=64)

for method in ("radau3", "exact"):
    cfg = RunConfig(scenario="landau", relativistic=True, c=100.0, dt=0.1, t_final=45.0,
                    method=method, **grid)
    series, final = run(cfg)
    t = series.column("t")
    amp = np.sqrt(2 * series.column("H_E"))
    print(f"{method:>7}: rate of the electric amplitude {envelope_rate(t, amp, (5, 40)):.4f}, "
          f"of the E1 mode {envelope_rate(t, series.column('E1_k0'), (5, 40)):.4f}, "
          f"final Gauss residual {series.column('gauss_residual')[-1]:.1e}")

# The E1 mode damps correctly either way; with the exact integrator the
# transverse field keeps ringing and the total electric amplitude stops decaying.
