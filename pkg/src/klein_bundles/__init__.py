"""Real line and vector bundles on Klein bottles.

A Klein bottle here is a genus-one real curve without real points,
modelled as C/<1, i*tau> with the involution z -> conj(z) + 1/2.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    AmbiguityError,
    DomainError,
    ExcludedLocusError,
    KleinError,
    NotClassifiedError,
    NotFixedError,
    UsageError,
)
from .torus import Backing, Convention, KleinBottle, TorusPoint, normal_form_klein, normalize, sigma_point  # noqa: F401
from .picard import (  # noqa: F401
    FixedClassKind,
    LineBundleClass,
    classify_fixed,
    dual,
    real_line_bundle_exists,
    sigma_conj,
    tensor,
    torsion_subgroup,
)
from .holonomy import FlatConnection, PathSpec, holonomy_unit_loop, parallel_transport, realness_sign  # noqa: F401
from .bundles import (  # noqa: F401
    BundleDesc,
    ConjPair,
    Ext2,
    Line,
    RealLine,
    RealStable,
    SelfExt,
    StableAtom,
    Stability,
    V,
    W,
    classify_rank2,
    complexify,
    is_isomorphic,
    normalize_desc,
    slope,
    stability,
)
from .moduli import (  # noqa: F401
    ModuliKind,
    canonical_key,
    construct_stable_real,
    exists_stable,
    fixed_locus_delta,
    moduli_descriptor,
    real_locus_in_coprime_moduli,
)
