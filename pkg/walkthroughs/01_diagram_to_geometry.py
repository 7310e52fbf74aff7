"""From a Greechie diagram to its geometry of points, lines and planes."""
# %%
from orthogeo import fixtures as F
from orthogeo import blocks, geometry_of, is_lattice, paste_greechie
from orthogeo.formats import export_dot, serialize_geometry

# %% Paste two 3-atom blocks that share the atom c.
A = paste_greechie(F.two_block())
print(A.n, "elements:", ", ".join(A.labels))
print("blocks:", [[A.labels[x] for x in b.carrier] for b in blocks(A)])
print("lattice:", is_lattice(A))

# %% The order lives in a boolean matrix, so numpy slicing answers order questions.
c = A.index("c")
print("above c:", [A.labels[y] for y in A.leq[c].nonzero()[0]])

# %% Points are 4-element Boolean subalgebras, lines 8-element ones.
G = geometry_of(A)
print(serialize_geometry(G))

# %% Four atoms give a 16-element Boolean algebra whose geometry holds one plane.
G16 = geometry_of(paste_greechie(F.boolean(4)))
(plane,) = G16.planes
print("plane points:", [G16.names[p] for p in plane.points])
print(export_dot(G16))
