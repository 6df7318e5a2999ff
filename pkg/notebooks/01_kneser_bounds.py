# %% [markdown]
# # Kneser powers and their chromatic numbers
#
# Build a few Kneser and Schrijver graphs, compute exact chromatic numbers and
# compare them with the combinatorial lower bounds.

# %%
from kneserlab.chromatic import afl_formula, all_bounds, chromatic_number
from kneserlab.kneser import complete_k_subsets, kneser_graph, schrijver_graph

# %% [markdown]
# The Petersen graph is `KG(5, 2)`: ten vertices, fifteen edges.

# %%
P = kneser_graph(5, 2)
print(P.num_vertices, len(P.edges))
print(chromatic_number(P.hypergraph))

# %% [markdown]
# Exact values against the closed formula for small `KG^r_{n,k}`.

# %%
for n, k, r in [(6, 2, 2), (7, 2, 3), (8, 3, 2), (9, 2, 3)]:
    chi = chromatic_number(kneser_graph(n, k, r).hypergraph).value
    print(f"n={n} k={k} r={r}  chi={chi}  formula={afl_formula(n, k, r)}")

# %% [markdown]
# Schrijver graphs keep the chromatic number `n - 2k + 2` with far fewer vertices.

# %%
for n in range(4, 10):
    S = schrijver_graph(n, 2)
    print(n, S.num_vertices, chromatic_number(S.hypergraph).value, n - 2)

# %% [markdown]
# Every bound at once for a base hypergraph.

# %%
for name, rec in all_bounds(complete_k_subsets(6, 2), 2).items():
    print(f"{name:14s} {rec['value']}")
