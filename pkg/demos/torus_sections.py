"""Which graphs over the zero section of the symplectic torus model are coisotropic?

Prints the charge, then for a handful of sections either the obstruction
or the extension to a Maurer-Cartan element together with the generators of
the vanishing ideal and their bracket certificates.
"""
from bfvlab import bfv, corpus
from bfvlab.superpoly import serialize

setup = corpus.get("torus")
omega = setup.charge.total
print("charge:", serialize(omega))

sections = [
    ["x3", "x3"],
    ["x3", "x4"],
    ["x2*x3", "x1*x3"],
    ["x1 + x2", "x1"],
    ["x4^2", "x3"],
]
for mu in sections:
    r = bfv.extend_section_to_mc(setup, mu)
    print(f"\nmu = {mu}")
    if not r.coisotropic:
        print("  obstructed:", serialize(r.obstruction))
        continue
    print("  deviation from the charge:", serialize(r.beta))
    gens, certs = bfv.coisotrope_generators(setup, omega, r.beta, 2)
    print("  ideal generators:", ", ".join(map(serialize, gens)))
    for cert in certs:
        i, j = cert.pair
        coeffs = "; ".join(map(serialize, cert.coefficients)) if cert.found else "none"
        print(f"  [h{i + 1}, h{j + 1}] coefficients: {coeffs}")
