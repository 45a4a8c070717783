"""From a Brieskorn triple to its plumbing graph and correction term.

Solve the Diophantine condition, expand each leg as a negative continued
fraction, blow down the -1 vertices, and run the characteristic covector
search on the reduced tree.
"""

from concord import BrieskornTriple, build_brieskorn_plumbing, d_plumbing
from concord.plumbing import analyze_graph, emit_plb

t = BrieskornTriple(2, 5, 7)
g = build_brieskorn_plumbing(t)
info = analyze_graph(g)

print(f"{t}: {len(g)} vertices, weights {sorted(g.weights.values())}")
print("intersection matrix:")
for row in g.intersection_matrix():
    print("   ", " ".join(f"{x:3d}" for x in row))
print(f"negative definite: {info.negative_definite}, |det| = {abs(info.determinant)}, bad vertices: {info.bad_vertex_count}")

res = d_plumbing(g)
print(f"d = {res.only()}, so delta_7(T(2,5)) = {2 * res.only()}")
print()
print(emit_plb(g), end="")
