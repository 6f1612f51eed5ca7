# %% [markdown]
# # Closed-form obesity factors for X states
#
# For X-form sources the obesity after either pipeline is Ω² times a factor
# that depends only on the populations.

# %%
import numpy as np

from swapcorr import XStateParams, abd_gamma_ratios, gamma_fs, gamma_sf
from swapcorr.correlations import obesity
from swapcorr.filtering import bell_outcome_class
from swapcorr.pathways import run_fs, run_sf
from swapcorr.bloch import bell_effect

x = XStateParams(0.4, 0.3, 0.2, 0.1, 0.15, 0.1j)
R = x.to_bloch()
om2 = obesity(R) ** 2

# %%
for n in range(4):
    k = bell_outcome_class(n)
    fs = obesity(run_fs(R, R, bell_effect(n)).R_AD)
    sf = obesity(run_sf(R, R, bell_effect(n)))
    print(f"Φ_{n}: FS {fs:.6f} = {gamma_fs(x) * om2:.6f}   SF {sf:.6f} = {gamma_sf(x, k) * om2:.6f}")

# %% [markdown]
# Along the line ρ22 + ρ33 = α with ρ11 = ρ44 one of the two ratios is exactly
# one and the other never drops below one.

# %%
for alpha in (0.4, 0.8):
    for r22 in np.linspace(0, alpha, 5):
        r11 = (1 - alpha) / 2
        c = abd_gamma_ratios([r11, r22, alpha - r22, r11], case=1)
        print(f"alpha={alpha} rho22={r22:.2f}  Γ_FS={c.gamma_fs:.4f}  ratios={c.ratios[0]:.4f}, {c.ratios[1]:.4f}")
