# %% [markdown]
# # Boolean independence in a few matrices
#
# Two operator models get glued along their state vectors. In the glued
# space, mixed moments of alternating words factor completely. For
# projections P, Q with phi(P) = 1 - p and phi(Q) = 1 - q, the meet of the
# spectral scales at t = 1/2 has state value p ⊼ q.

# %%
import numpy as np

from boolmax import (
    AtomicMeasure,
    Step,
    boolean_additive_convolve,
    boolean_embed,
    boolean_max_conv,
    diagonal_model,
    distribution,
    moment,
    projection_model,
    spectral_max_distribution,
)

emb = boolean_embed(projection_model(0.5, "P"), projection_model(0.5, "Q"))
print("dimension", emb.dimension)
print("phi(meet) at t=1/2:", spectral_max_distribution(emb, [0.5])[0][1])

# %% [markdown]
# The same for a full (p, q) table. Rows are p, columns are q.

# %%
ps = [0.1, 0.3, 0.5, 0.7, 0.9]
table = np.array(
    [[spectral_max_distribution(boolean_embed(projection_model(p, "P"), projection_model(q, "Q")), [0.5])[0][1]
      for q in ps] for p in ps]
)
closed = np.array([[1 / (1 / p + 1 / q - 1) for q in ps] for p in ps])
print(np.round(table, 4))
print("max gap to closed form:", np.abs(table - closed).max())

# %% [markdown]
# Diagonal observables give step distributions. The spectral max of the
# glued pair matches the Boolean max-convolution of the two step functions.

# %%
X = diagonal_model([0.0, 2.0], np.sqrt([0.3, 0.7]), "X")
Y = diagonal_model([0.0, 3.0], np.sqrt([0.6, 0.4]), "Y")
grid = [0.5, 1.0, 2.0, 2.5, 3.0, 4.0]
op = [v for _, v in spectral_max_distribution(boolean_embed(X, Y), grid)]
cf = boolean_max_conv(Step(distribution(X, "X")), Step(distribution(Y, "Y")))(grid)
for t, a, b in zip(grid, op, cf):
    print(f"t={t:<4} operator={a:.12f} closed={b:.12f}")

# %% [markdown]
# Sums instead of maxima: Boolean additive convolution, via K = z - 1/G.
# Two fair Bernoulli projections give atoms 1/3 at 0 and 2/3 at 3/2.

# %%
b = AtomicMeasure.bernoulli_projection(0.5)
out = boolean_additive_convolve(b, b)
print(list(out))
s = emb.model.with_observable("S", emb.model["P"] + emb.model["Q"])
print("eigen:", list(distribution(s, "S")))
print("phi(S), phi(S^2):", moment(s, ["S"]), moment(s, ["S", "S"]))
