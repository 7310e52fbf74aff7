"""Directions at points, the poset they form, and how it recovers the algebra."""
# %%
from orthogeo import fixtures as F
from orthogeo import (
    all_directions,
    check_boolean,
    check_lattice,
    geometry_of,
    geometry_of_diagram,
    iso_oml,
    paste_greechie,
    reconstruct_omp,
    validate_orthogeometry,
)
from orthogeo.oracle import brute_lub

# %% Each point carries two directions: an arrow per line through it, and the flip.
A = paste_greechie(F.loop(4))
G = geometry_of(A)
P = all_directions(G)
print(len(P), "directions for", A.n, "elements")
print(", ".join(P.labels))

# %% Directions ordered by DOWN-to-UP along shared lines rebuild the poset.
R = reconstruct_omp(G)
print("isomorphic to the pasting:", iso_oml(R, A) is not None)

# %% The loop of four blocks is not a lattice: some pair has no least upper bound.
verdict = check_lattice(G)
print("lattice:", bool(verdict), "witness:", [d.name(G) for d in verdict.witness])
print("brute-force join of the witness:", brute_lub(P, verdict.witness))
print("Boolean:", bool(check_boolean(G)))

# %% A loop of three blocks is no orthomodular poset; its geometry fails the triangle axiom.
report = validate_orthogeometry(geometry_of_diagram(F.loop(3)))
print(report)
