# %% [markdown]
# # Entanglement swapping with Bloch matrices
#
# Two independent pairs AB and CD. Measuring B and C with an effect E leaves
# A and D correlated. In the Bloch picture the post-measurement state is a
# product of three 4x4 real matrices.

# %%
import numpy as np

from swapcorr import (
    bell_bloch,
    bell_effect,
    obesity,
    predict_obesity,
    report,
    state_to_bloch,
    swap_bloch,
    werner,
)
from swapcorr.oracle import swap_density

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# Singlets on both sides and a singlet outcome give back a singlet, with
# probability 1/4.

# %%
S = bell_bloch(0)
out = swap_bloch(S, bell_effect(0), S)
print(out.R_AD)
print("probability", out.probability)

# %% [markdown]
# Noisy sources degrade. Werner states with visibility p produce a Werner
# state with visibility p².

# %%
W = state_to_bloch(werner(0.9))
out = swap_bloch(W, bell_effect(0), W)
print(np.diag(out.R_AD))
print("before", report(W))
print("after ", report(out.R_AD))

# %% [markdown]
# Obesity of the output follows from the inputs alone.

# %%
print(obesity(out.R_AD), predict_obesity(W, bell_effect(0), W))

# %% [markdown]
# The same swap done the long way, with a 16x16 density matrix and a partial
# trace.

# %%
rho, p = swap_density(werner(0.9), np.outer([0, 1, -1, 0], [0, 1, -1, 0]) / 2, werner(0.9))
print(np.abs(state_to_bloch(rho) - out.R_AD).max(), p)
