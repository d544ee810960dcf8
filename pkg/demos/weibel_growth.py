"""Weibel instability: magnetic growth from temperature anisotropy.

A reduced grid (8 x 64^2) suffices for the linear phase since only the k0
mode is excited. The fitted growth rate is compared with the dispersion root;
at c = 5 the same setup stays quiet.
"""

# %%
from apvm import RunConfig, run
from apvm.diagnostics import fit_exponential_rate, linear_phase_window
from apvm.dispersion import WEIBEL_PARAMS, continuous_D, find_root

target = find_root(lambda w: continuous_D(WEIBEL_PARAMS, w), -0.1j).imag

for dt in (0.1, 0.05):
    cfg = RunConfig(scenario="weibel", c=1.0, dt=dt, t_final=200.0, nx=8, np1=64, np2=64,
                    sample_every=int(round(0.5 / dt)))
    series, _ = run(cfg)
    t, b = series.column("t"), series.column("B_k0")
    window = linear_phase_window(t, b, width=10.0)
    print(f"dt = {dt}: growth {fit_exponential_rate(t, b, window):.5f} on {window}, theory {target:.5f}")

# %% no instability at c = 5
cfg = RunConfig(scenario="weibel", c=5.0, dt=0.1, t_final=100.0, nx=8, np1=64, np2=64)
series, _ = run(cfg)
b = series.column("B_k0")
print(f"c = 5: |B(k0)| changes by a factor {b[-1] / b[0]:.3g} over t = 100")
