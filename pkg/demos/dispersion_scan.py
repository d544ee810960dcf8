"""Linear Weibel theory: growth rate of the magnetic mode as c varies.

The continuous dispersion relation is written with the plasma dispersion
function; its most unstable root gives the reference growth rate. The
time-discrete relation shows how a finite step perturbs that rate.
"""

# %%
import numpy as np

from apvm.dispersion import WEIBEL_PARAMS, continuous_D, det_semidiscrete, find_root, growth_rate_scan, most_unstable_root

root = find_root(lambda w: continuous_D(WEIBEL_PARAMS, w), -0.1j)
print(f"Weibel root at c = 1: omega = {root:.10f}")

# %% growth rate against c; the instability is gone past c of about 3
table = growth_rate_scan(np.arange(0.5, 5.01, 0.5))
print("\n   c    Im(omega)   status")
for c, _, im, status in table.rows:
    print(f"{c:4.1f} {im:11.6f}   {status}")

# %% the time-discrete relation approaches the continuous one as dt -> 0
print("\n   dt    Im(omega) printed   Im(omega) rederived")
for dt in (0.05, 0.02, 0.01, 0.005):
    p = WEIBEL_PARAMS.with_(dt=dt)
    rows = []
    for variant in ("printed", "rederived"):
        r = most_unstable_root(lambda w: det_semidiscrete(p, w, variant), [0.05j, 0.02j, 0.01j])
        rows.append(r.imag if r is not None else float("nan"))
    print(f"{dt:6.3f} {rows[0]:18.6f} {rows[1]:20.6f}")
