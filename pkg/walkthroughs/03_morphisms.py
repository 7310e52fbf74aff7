"""Homomorphisms as partial point maps, and lifting point maps back."""
# %%
from orthogeo import fixtures as F
from orthogeo import geo_of_hom, hom_from_atoms, is_proper_hom, lift_morphism, paste_greechie
from orthogeo.morphisms import as_point_map

B8 = paste_greechie(F.boolean(3))
B16 = paste_greechie(F.boolean(4))

# %% Collapse B16 onto B8 by sending the atom d to 0.
ix8, ix16 = B8.index, B16.index
f = hom_from_atoms(
    B16, B8, {ix16("a"): ix8("a"), ix16("b"): ix8("b"), ix16("c"): ix8("c"), ix16("d"): B8.bottom}
)
alpha = geo_of_hom(f)
print(alpha.named())
print("proper:", is_proper_hom(f))

# %% Lifting transports arrows along the point map and returns a homomorphism of direction posets.
lifted = lift_morphism(alpha)
print("liftable:", bool(lifted))
back = as_point_map(geo_of_hom(lifted.hom), alpha.source, alpha.target)
print("round trip recovers the point map:", back == alpha)
