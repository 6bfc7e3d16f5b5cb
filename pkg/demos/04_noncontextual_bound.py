# %% [markdown]
# # The noncontextual bound by enumeration
#
# A deterministic noncontextual model assigns 0 or 1 to every outcome so
# that each context has exactly one 1. Enumerating all of them gives the
# largest possible value of v(f_NL) - v(a,0) - v(0,a).

# %%
from pathcurrents import canonical_network, check_statements, enumerate_assignments, nc_max_witness, rho_eta, witness

net = canonical_network()
assignments = enumerate_assignments(net)
print(len(assignments), "assignments")
for a in assignments:
    print("  ", a.true_labels())
print("noncontextual maximum:", nc_max_witness(assignments))
print("quantum value for Phi_max:", witness(rho_eta(1)).witness)

# %% [markdown]
# Whenever f_NL is assigned 1, a prediction of 0,1 forces 0,a and a
# prediction of 1,0 forces a,0. The reverse direction does not hold: one
# assignment has f_NL, a,0, 0,0 and 0,a.

# %%
report = check_statements(assignments, net)
print("statements hold:", report.ok)
print("reverse direction fails for:", [a.true_labels() for a in report.converse_counterexamples])
