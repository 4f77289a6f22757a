"""Two extensions of one section differ by a gauge transformation; formal
perturbations of the charge can be gauged to normalized ones order by order."""
import random

from bfvlab import bfv, corpus
from bfvlab.superpoly import parse, serialize

setup = corpus.get("fiberlinear")
alg = setup.alg
omega = setup.charge.total
mu = ["0", "x1^2 + x2"]

first = bfv.extend_section_to_mc(setup, mu)
eta = parse("x1 + 2", alg) * alg("c1") * alg("c2") * alg("b1") * alg("b2")
second = bfv.extend_section_to_mc(setup, mu, {1: eta})
print("first extension: ", serialize(omega + first.beta))
print("second extension:", serialize(omega + second.beta))
gens = bfv.gauge_between(setup, omega, first.beta, second.beta)
for k, eps in enumerate(gens, 1):
    print(f"eps_{k} =", serialize(eps))
print("composite exact:", bfv.apply_gauge(setup, gens, omega + first.beta) == omega + second.beta)

N = 3
beta = bfv.random_formal_mc(setup, random.Random(1), N)
print("\nrandom formal perturbation, order by order:")
for l, b in enumerate(beta):
    print(f"  eps^{l}:", serialize(b))
gammas, out = bfv.normalize_formal_mc(setup, omega, beta, N)
print("normalized:")
for l, (g, b) in enumerate(zip(gammas, out[1:]), 1):
    print(f"  eps^{l}: gauge {serialize(g)}; truncation {serialize(bfv.truncation_T(b))}")
print("residual mod eps^4 vanishes:", not any(bfv.formal_residual(setup, omega, out, N)))
