# %% [markdown]
# # Who converges to a Dagum law?
#
# G is attracted to Dagum(1, alpha) under Boolean maxima exactly when its
# tail 1 - G is regularly varying with index -alpha. Here are the tail index
# estimates, the norming constants, and the convergence itself.

# %%
import numpy as np

from boolmax import (
    Custom,
    Dagum,
    Pareto,
    doa_check,
    geometric_grid,
    norming_sequence,
    rv_equivalence_check,
    rv_index_estimate,
)

for G in (Pareto(1.0), Dagum(1.0, 2.0), Dagum(3.0, 0.5)):
    est = rv_index_estimate(G.tail)
    print(f"{G!r:<35} alpha_hat={est.alpha_hat:.6f} converged={est.converged}")

# %% [markdown]
# The tail of G and the tail of its transfer image carry the same index.

# %%
rep = rv_equivalence_check(Dagum(1.0, 1.0), base_scales=(1e4, 1e5, 1e6))
print(rep.direct.alpha_hat, rep.transferred.alpha_hat, rep.difference)

# %% [markdown]
# An exponential tail is not regularly varying. The local index keeps
# growing with t, so the estimate never settles.

# %%
expo = Custom(lambda t: -np.expm1(-t), tail=lambda t: np.exp(-t), name="exponential")
est = rv_index_estimate(expo.tail)
print("converged:", est.converged, "usable scales:", sorted({r[0] for r in est.estimates}))

# %% [markdown]
# Norming constants come from the classical quantile of transfer(G), and the
# normed Boolean powers of Pareto(1) approach Dagum(1, 1) at rate about 1/n.

# %%
ns = (10, 100, 1000, 10000)
print(norming_sequence(Pareto(1.0), ns).entries)
grid = geometric_grid(0.1, 10.0, 50)
rep = doa_check(Pareto(1.0), Dagum(1.0, 1.0), ns, grid)
for n, a, e in zip(rep.n_values, rep.norming, rep.errors):
    print(f"n={n:<6} a_n={a:<10.6g} sup error={e:.3g}")
print("decreasing:", rep.decreasing)
