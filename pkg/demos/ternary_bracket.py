"""Homotopy transfer from the BFV complex reproduces the derived brackets.

On the sheared setup the binary bracket on sections is not a Lie bracket,
so the ternary operation is genuinely needed; the script prints both
families side by side and the Jacobiator of the binary part alone.
"""
import itertools

from bfvlab import bfv, corpus, linfty, suite, trees, voronov
from bfvlab.superpoly import serialize

setup = corpus.get("sheared")
C = bfv.bfv_contraction(setup)
L = bfv.transfer_input(setup)
gens = suite.generators(setup)

for k in (1, 2, 3):
    for tup in itertools.combinations_with_replacement(gens, k):
        args = list(tup)
        nu = trees.nu_k(C, L, k, args) or setup.alg.zero()
        if k == 1:
            mu = bfv.delta1(setup, args[0])
        else:
            mu = voronov.shla_brackets(setup, k, args)
        if nu or mu:
            label = ", ".join(map(str, args))
            flag = "" if nu == mu else "   <-- differs"
            print(f"k={k} ({label}): transferred {serialize(nu)} | derived {serialize(mu)}{flag}")

# drop the ternary operation and look at the arity-3 Jacobiator
src, _, _ = suite.transfer_structures(setup, 2)
x1, x2, x3 = (setup.alg(n) for n in setup.alg.xs)
J = linfty.jacobiator(src, 3, [x1, x2, x3])
print("\nJacobiator of nu^1 + nu^2 alone on (x1, x2, x3):", serialize(J) if J else "0")
