# %% [markdown]
# # Alternation numbers
#
# `alt_r(H, sigma, q)` is the longest alternating signed vector whose parts
# each induce fewer than `q` edges.  Here: the identities for complete and
# stable set systems, and the effect of the vertex ordering.

# %%
from math import comb

from kneserlab.alternation import alt_r_q, alt_r_sigma_q, salt_q, salt_sigma_q
from kneserlab.hypercore import Hypergraph
from kneserlab.kneser import complete_k_subsets, stable_subsets_hypergraph

# %%
# complete k-subsets: alt_r(K_n^k, I, C(k+l, k)) = r(k+l-1)
for n, k, r, l in [(6, 2, 2, 0), (8, 2, 2, 1), (8, 2, 2, 2), (9, 2, 3, 0)]:
    q = comb(k + l, k)
    print((n, k, r, l), alt_r_sigma_q(complete_k_subsets(n, k), None, r, q), r * (k + l - 1))

# %%
# stable sets: salt = 2k - 1
for n in (6, 8, 10):
    print(n, salt_sigma_q(stable_subsets_hypergraph(n, 2), None, 1))

# %% [markdown]
# The ordering matters.  On a path the identity ordering lets a vector
# alternate along the whole path; interleaving the vertices brings it down to
# the minimum.

# %%
path = Hypergraph.from_edges(5, [[1, 2], [2, 3], [3, 4], [4, 5]])
print("identity", alt_r_sigma_q(path, None, 2, 1))
print("scrambled", alt_r_sigma_q(path, [1, 3, 5, 2, 4], 2, 1))
print("best", alt_r_q(path, 2, 1))
print("salt best", salt_q(path, 1))
