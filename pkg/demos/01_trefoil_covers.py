"""Correction terms of the prime-power branched covers of the trefoil.

Covers of order 6n -+ 1 are Brieskorn spheres obtained by -+1/n surgery,
so the torsion coefficient settles them. The 2^n-fold covers share a
factor with 6 and are read off +-3 surgeries on twist knots instead.
"""

from concord import TorusKnot, delta_pn

trefoil = TorusKnot(2, 3)

print("order  delta  route     manifold")
for N in (5, 7, 11, 13, 17, 19, 23, 25):
    r = delta_pn(trefoil, N)
    print(f"{N:5d}  {r.value:5d}  {r.route:8s}  {r.manifold}")

for n in range(1, 9):
    r = delta_pn(trefoil, 2 ** n)
    print(f"{2 ** n:5d}  {r.value:5d}  {r.route:8s}  {r.manifold}")

# the lattice engine must agree wherever both apply
for N in (5, 7, 11, 13):
    assert delta_pn(trefoil, N, route="plumbing").value == delta_pn(trefoil, N, route="torsion").value
print("torsion and plumbing routes agree on 5, 7, 11, 13")
