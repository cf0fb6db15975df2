"""The degenerate case Z = diag(tau1, 3 tau2).

Here theta_A factors as f(v1) g(v2): a product of elliptic theta functions.
The divisor splits into one vertical and three horizontal elliptic curves,
meeting at 2-torsion nodes.
"""

from theta13 import product_components, two_torsion_census
from theta13.divisor import e_components, f_component, product_siegel

tau1, tau2 = 0.2 + 1.1j, -0.1 + 0.9j
rep = product_components(tau1, tau2)

print(f"f vanishes at v1 = {f_component(tau1):.4f}")
print("g vanishes at v2 =", ", ".join(f"{z:.4f}" for z in e_components(tau2)))
print(f"component residual      {rep.max_component_residual:.1e}")
print(f"off-component minimum   {rep.off_component_min:.3g}")
print(f"factorization residual  {rep.factorization_residual:.1e}")
print(f"gradient at a node      {rep.node_gradient:.1e}")
print(f"nodes are 2-torsion     {rep.intersections_two_torsion}")

# three more 2-torsion points land on the reducible divisor
res = two_torsion_census(product_siegel(tau1, tau2), strict=False)
print(f"2-torsion points on the divisor: {res.on_count}")
