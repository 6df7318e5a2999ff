# %% [markdown]
# # Random subhypergraphs
#
# Each edge of `KG^r(H)` survives with probability rho.  The per-edge
# uniforms come from a counter-based generator keyed on (seed, trial), so
# results do not depend on the number of worker threads.

# %%
import numpy as np

from kneserlab.hypercore import Hypergraph
from kneserlab.kneser import kneser_graph, kneser_power
from kneserlab.randmc import (
    RandomModelParams,
    event_a_bound_general,
    mc_event_a,
    mc_tail,
    retained_matrix,
)

# %%
P = kneser_graph(5, 2)
kept = retained_matrix(len(P.edges), RandomModelParams(0.5, seed=1, trials=10_000)).sum(axis=1)
print(kept.mean(), kept.std())

# %%
for rho in (1.0, 0.9, 0.7, 0.5):
    res = mc_tail(P, RandomModelParams(rho, seed=3, trials=2000), d=3)
    print(f"rho={rho}  Pr(chi >= 3) ~ {res.estimate:.4f} +- {res.stderr:.4f}")

# %% [markdown]
# Event A against its analytic bound on the subsets of size at most two of [6].

# %%
small = Hypergraph(6, tuple(m for m in range(1, 64) if m.bit_count() <= 2))
K = kneser_power(small, 2)
for rho in (0.7, 0.85, 1.0):
    res = mc_event_a(K, RandomModelParams(rho, seed=5, trials=2000), q=5, t=5, d=2)
    print(rho, res.estimate, res.bound.to_dict(), res.containment_failures)

# %%
rhos = np.linspace(0.1, 1.0, 10)
[round(event_a_bound_general(10, 2, 6, 6, r).log_bound, 2) for r in rhos]
