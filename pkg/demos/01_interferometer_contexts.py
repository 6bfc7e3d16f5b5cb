# %% [markdown]
# # Measurement contexts as interferometer paths
#
# Five beam splitters turn the product basis of two qubits into five
# different measurement contexts. The fourth path, |1,1>, runs alongside
# and never takes part in an interference.

# %%
import numpy as np

from pathcurrents import canonical_network, named_state, stage_residuals, swap_operator
from pathcurrents.hilbert import inner_product

net = canonical_network()
for stage in net.stages:
    print(f"stage {stage.index}: {stage.inputs} -> {stage.outputs}  R = {stage.reflectivity:.4f}")

# %% [markdown]
# Each context is an orthonormal basis. Columns are the outcome states in
# the input basis |0,0>, |0,1>, |1,0>, |1,1>.

# %%
np.set_printoptions(precision=4, suppress=True)
for ctx in net.contexts:
    print(ctx.index, ctx.labels)
print(net.contexts[2].matrix.real)
print("max residual:", stage_residuals(net).max)

# %% [markdown]
# The collective outcome f_NL is symmetric under exchange of the two
# qubits, while N1 and N2 are exchanged by it. The central beam splitter
# acts as the swap, so the output context is the input context with
# |0,1> and |1,0> on exchanged rails.

# %%
swap = swap_operator()
f, n1, n2 = (named_state(x) for x in ("f_NL", "N1", "N2"))
print("SWAP f_NL == f_NL:", np.allclose(swap @ f, f))
print("SWAP N1 == N2:   ", np.allclose(swap @ n1, n2))
print("<N1|N2> =", inner_product(n1, n2).real)
print(net.contexts[0].labels, "->", net.contexts[-1].labels)
print(net.total_unitary.real)
