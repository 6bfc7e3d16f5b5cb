# %% [markdown]
# # Witness versus visibility
#
# rho(eta) mixes |0,1> and |1,0> equally with coherence eta between them.
# The noncontextual inequality requires P(f_NL) <= P(a,0) + P(0,a); here
# P(a,0) = P(0,a) = 1/4 for every eta while P(f_NL) = (1 + eta)/3, so the
# inequality fails once eta > 1/2.

# %%
from pathcurrents import canonical_network, probabilities, rho_eta, visibility_sweep

net = canonical_network()
for eta in (0, 1):
    rep = probabilities(rho_eta(eta), net.contexts[2])
    print(f"eta = {eta}:", {lab: round(p, 6) for lab, p in rep.entries})

# %%
records = visibility_sweep("0:1:11")
print(f"{'eta':>5} {'P(f_NL)':>9} {'P(a,0)+P(0,a)':>14} {'witness':>9} {'P(N1)':>8}")
for r in records:
    print(f"{r.eta:5.2f} {r.p_fnl:9.5f} {r.p_a0 + r.p_0a:14.5f} {r.witness:9.5f} {r.p_n1:8.5f}")

# %% [markdown]
# The same table is available from the command line:
#
#     pathcurrents sweep --grid 0:1:101 --format csv > sweep.csv
