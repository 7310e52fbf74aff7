"""Orthogeometries of finite orthomodular posets.

Build an orthomodular poset (from a Greechie diagram or an explicit order),
take its geometry of 4- and 8-element Boolean subalgebras, check the
characterising axioms, rebuild the poset from directions, and move
homomorphisms back and forth between algebras and geometries.
"""
from .bsub import enumerate_lines, enumerate_planes16, enumerate_points, generated_subalgebra
from .directions import (
    ONE,
    ZERO,
    Arrow,
    Direction,
    DirPoset,
    NotAnOrthogeometry,
    all_directions,
    canonical_direction,
    canonical_embedding,
    check_boolean,
    check_direction_axiom,
    check_lattice,
    directions_at,
    is_cone,
    minimal_cone,
    orthosum,
    reconstruct_omp,
    validate_orthogeometry,
)
from .geometry import (
    PlaneConfig,
    PreOrthogeometry,
    Subspace,
    check_triangle_axiom,
    detect_planes,
    geometry_of,
    geometry_of_diagram,
    nondegenerate_triangles,
    spans_exclusive_plane,
    subspace_closure,
)
from .greechie import GreechieDiagram, paste_greechie
from .morphisms import (
    GeoMorphism,
    OmlHom,
    geo_of_hom,
    hom_from_atoms,
    is_normal_geo_morphism,
    is_normal_hom,
    is_proper_hom,
    is_valid_morphism,
    lift_morphism,
)
from .oml import (
    BooleanSubalgebra,
    Oml,
    OmlError,
    blocks,
    build_oml,
    commutes,
    is_boolean,
    is_lattice,
    is_proper,
    iso_oml,
)

__version__ = "0.1.0"
