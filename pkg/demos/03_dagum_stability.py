# %% [markdown]
# # Dagum laws are Boolean max-stable
#
# The Dagum law F(t) = 1 / (1 + lam t^-alpha) has odds lam t^-alpha. A Boolean
# n-fold max multiplies odds by n, and rescaling t by n^(1/alpha) divides
# them by n again. So F^{⊻n}(n^(1/alpha) t) = F(t), with no limit involved.

# %%
import numpy as np

from boolmax import (
    BernoulliProjection,
    Dagum,
    Frechet,
    Pareto,
    boolean_max_conv_power,
    geometric_grid,
    is_boolean_max_stable,
    rescale,
    stability_check,
    transfer,
)

grid = geometric_grid(0.1, 10.0, 50)
F = Dagum(1.0, 2.0)
for n in (2, 10, 1000, 10**6):
    rep = stability_check(F, n, grid)
    print(f"n={n:<8} a_n={rep.a_n:<10.6g} defect={rep.defect:.2g}")

# %% [markdown]
# With the reciprocal scaling n^(-1/alpha) the identity fails badly.

# %%
wrong = rescale(boolean_max_conv_power(F, 10), 10 ** -0.5)
print("defect with n^(-1/alpha):", np.abs(wrong(grid) - F(grid)).max())

# %% [markdown]
# The transfer map exp(1 - 1/F) sends Dagum(lam, alpha) to the classical
# Fréchet law with the same parameters.

# %%
t = np.array([0.5, 1.0, 2.0])
print(transfer(F)(t))
print(Frechet(1.0, 2.0)(t))

# %% [markdown]
# Recognising stable laws: log-odds must be affine in log t.

# %%
for cand in (Dagum(2.0, 1.5), Frechet(1.0, 1.0), Pareto(1.0), BernoulliProjection(0.5)):
    fit = is_boolean_max_stable(cand, grid, tolerance=1e-6)
    print(f"{type(cand).__name__:<20} accepted={fit.accepted!s:<5} "
          f"lam={fit.lam:.6g} alpha={fit.alpha:.6g} residual={fit.max_residual:.2g}")
