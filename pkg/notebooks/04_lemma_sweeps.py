# %% [markdown]
# # Exhaustive lemma sweeps
#
# Every coloring up to color permutation, every route checked against brute
# force.  These are the same sweeps the acceptance suite runs.

# %%
import json

from kneserlab.kneser import complete_k_subsets
from kneserlab.verify import verify_altT_sweep, verify_lemmain, verify_lemmainken, verify_sglemma

# %%
rep = verify_lemmain(complete_k_subsets(4, 2), 2)
print(json.dumps(rep.to_dict(), indent=1))

# %%
rep = verify_lemmainken(6, 2, 2, 0)
print(rep.checked, rep.failure_count, rep.routes, rep.extra["comparable_pairs"])

# %%
rep = verify_sglemma(6, 2, 0)
print(rep.checked, rep.failure_count, rep.routes)

# %%
# smaller than the full n <= 5 sweep to keep this quick
rep = verify_altT_sweep(max_n=4)
print(rep.checked, rep.failure_count, rep.extra)
