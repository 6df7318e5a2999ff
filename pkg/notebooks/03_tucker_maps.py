# %% [markdown]
# # Z_p-Tucker maps as a certificate generator
#
# For a coloring of the edges of `H` with few colors, build the lambda map,
# check equivariance and monotonicity, find the chain that breaks the third
# property and read off an r-tuple of disjoint same-colored sets.

# %%
import numpy as np

from kneserlab.kneser import complete_k_subsets, stable_subsets_hypergraph
from kneserlab.tucker import (
    build_lemmain_lambda,
    check_properties,
    extract_tuple,
    reduce_composite,
    solve_salt_lemma,
)

# %%
H = complete_k_subsets(6, 2)
rng = np.random.default_rng(0)
coloring = [int(c) for c in rng.integers(1, 3, H.num_edges)]
lam = build_lemmain_lambda(H, None, coloring, p=2, q=1, d=6, t=1)
rep = check_properties(lam)
print("alpha", lam.alpha, "m", lam.m)
print("equivariant", rep.equivariant, "monotone", rep.monotone_low)
print("chain", rep.chain)

# %%
W = extract_tuple(lam, rep.chain)
W.to_dict()

# %% [markdown]
# Composite `r = 4` through the reduction, on `K_8^2` with one color.

# %%
K8 = complete_k_subsets(8, 2)
reduce_composite(K8, None, [1] * K8.num_edges, 2, 2, q=1, d=7, t=1).to_dict()

# %% [markdown]
# The two-signed variant on stable sets.

# %%
S = stable_subsets_hypergraph(6, 2)
solve_salt_lemma(S, None, [1, 2, 3, 1, 2, 3, 1, 2, 3], q=1, d=4).to_dict()
