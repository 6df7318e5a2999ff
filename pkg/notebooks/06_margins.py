# %% [markdown]
# # Finite-n margins of the asymptotic conditions
#
# The almost-sure statements need a margin `M(n)` to tend to minus infinity.
# At desk scale we can only tabulate `M(n)` and the growth ratios.

# %%
from kneserlab.randmc import PowerLaw, margin_csv, margin_sweep

grid = [10**2, 10**3, 10**4, 10**5, 10**6]

# %% [markdown]
# Schrijver regime `k = n^0.7`, `l = 2`, rho = 1/2.  The margin still grows on
# this grid: the `-rho t^2` term is about `n^0.8 / 8` while the positive part
# is about `2 n^0.7 ln n`, and the former wins only for astronomically large n.

# %%
rows = margin_sweep("SG", PowerLaw.term(1, 0.7), PowerLaw.const(2), PowerLaw.const(2),
                    PowerLaw.const(0.5), grid)
print(margin_csv(rows))

# %% [markdown]
# Near-threshold regime `n - 2k = n^0.3`: the gap ratio shrinks as required.

# %%
rows = margin_sweep("II", PowerLaw.parse("0.5,1,0+-0.5,0.3,0"), PowerLaw.const(1),
                    PowerLaw.const(2), PowerLaw.const(0.5), grid)
print(margin_csv(rows))
