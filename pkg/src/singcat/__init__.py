"""Exact homological algebra over bound quiver algebras.

Projective resolutions, Ext and stable Hom, cluster-tilting verification,
and the skeleton of the stable category obtained by inverting the syzygy
functor, all in exact arithmetic over Q or a prime field.
"""

from __future__ import annotations

from .exact_linalg import Field, FieldError, Matrix, prime_field, rational_field
from .homology import (
    ExtSpace,
    PdCertificate,
    ProjectiveResolution,
    StableHomSpace,
    ext,
    omega_stabilizes,
    pd_certificate,
    resolve,
    stable_end_dim,
    stable_hom,
    syzygy,
    syzygy_morphism,
)
from .quiver_algebra import (
    Arrow,
    BoundQuiverAlgebra,
    InvalidKupisch,
    NotFiniteDimensionalWithinBound,
    PathWord,
    PeriodicPresentation,
    Quiver,
    QuiverError,
    RelationElement,
    WindowTooSmall,
    compute_basis,
    nakayama2_infinite,
    nakayama2_tilde,
    nakayama_cyclic,
    opposite_algebra,
    orbit_grid_algebra,
    truncate,
)
from .rep import (
    AlgebraMismatch,
    HomSpace,
    RepMorphism,
    Representation,
    add_membership,
    direct_sum,
    dual_module,
    hom,
    injective_module,
    injectives,
    interval_module,
    is_isomorphic,
    is_projective,
    projective_cover,
    projective_module,
    projectives,
    simple_module,
    stable_iso,
    zero_rep,
)
from .stab import (
    GorensteinReport,
    GpCertificate,
    OrbitNotResolved,
    SkeletonReport,
    StabHom,
    StableObject,
    gp_certificate,
    gp_intersection_check,
    is_iwanaga_gorenstein,
    skeleton,
    stab_hom,
    stabilize_angle,
    standard_triangle,
)
from .tilting import (
    Angle,
    Check,
    CTReport,
    SubcatSpec,
    d_coresolution,
    d_resolution,
    left_approximation,
    right_approximation,
    standard_angle,
    verify_cluster_tilting,
    verify_dZ_closure,
    verify_gen_cogen,
    verify_rigid,
)

__version__ = "0.1.0"
