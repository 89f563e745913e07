"""Lower bounds on ground energies of Pauli Hamiltonians via the frustration graph."""

from hbarperfect.applications.ground import ground_bound
from hbarperfect.applications.states import chain_strings

for n in (2, 3):
    res = ground_bound([1] * (2 * n + 1), chain_strings(n))
    print(f"H_{n}: strings {res.strings}")
    print(f"   bound {res.bound:.6f}  exact {res.exact_energy:.6f}  ({res.scale_src} = {res.scale:g})")

tilde = ground_bound([1] * 6, chain_strings(2, yy=True), w=[2, 2, 1, 1, 1, 1])
print(f"tilde H_2: bound {tilde.bound:.6f}  exact {tilde.exact_energy:.6f}")
