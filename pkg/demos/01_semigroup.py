# %% [markdown]
# # Odds, and the map that turns them into products
#
# The Boolean min-convolution on [0, 1] looks odd at first:
#
#     x ⊼ y = 1 / (1/x + 1/y - 1)
#
# Write u(x) = 1/x - 1. Then u(x ⊼ y) = u(x) + u(y), so the operation just
# adds odds. Exponentiating with chi(x) = exp(-u(x)) turns sums of odds into
# products.

# %%
import numpy as np

from boolmax import boolean_min, boolean_min_power, chi, chi_inverse, odds

print("0.5 ⊼ 0.5 =", boolean_min(0.5, 0.5))
print("odds:", odds(0.5), "+", odds(0.5), "=", odds(boolean_min(0.5, 0.5)))

# %% [markdown]
# 1 is the identity and 0 is absorbing, just as for multiplication.

# %%
for x in (0.0, 0.2, 0.9):
    print(f"1 ⊼ {x} = {boolean_min(1.0, x)}   0 ⊼ {x} = {boolean_min(0.0, x)}")

# %% [markdown]
# The isomorphism, checked on a batch of random pairs.

# %%
rng = np.random.default_rng(1)
x, y = rng.uniform(size=(2, 5))
print(np.column_stack([chi(boolean_min(x, y)), chi(x) * chi(y)]))

# %% [markdown]
# n-fold powers multiply the odds by n, so the power of a half is 1/(n + 1).

# %%
for n in (1, 2, 4, 99):
    print(n, boolean_min_power(0.5, n))

# %% [markdown]
# One caveat. chi(x) = exp(1 - 1/x) drops below the smallest double once
# x < 1/745 or so. There chi returns 0, and chi_inverse cannot recover x.

# %%
for x in (1 / 700, 1 / 745, 1 / 800):
    print(f"x={x:.6g}  chi={chi(x):.3g}  back={chi_inverse(chi(x)):.6g}")
