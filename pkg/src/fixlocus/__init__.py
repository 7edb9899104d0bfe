"""Fixed-point component counts for finite isometry groups of hyperbolic manifolds.

The group side is exact: finite groups are permutation groups with every
element enumerated, and all counts are evaluated in rational arithmetic with
integrality asserted rather than rounded.
"""

from fixlocus.catalog import CatalogInstance, fermat_instance, schottky_instance
from fixlocus.counting import (
    FixReport,
    MergeEntry,
    MergeSpec,
    NormalizerImageSpec,
    component_count,
    component_upper_bound,
    compute_I,
    compute_J,
    elliptic_specs,
    resolve_n,
)
from fixlocus.counting2d import (
    FixCount2D,
    ReflectionClassData,
    fiber_oracle_count,
    macbeath_count,
    oval_count,
)
from fixlocus.kernels import BACKEND
from fixlocus.parser import InstanceBundle, parse_instance, parse_word, render_instance, render_word
from fixlocus.perm import (
    FiniteGroup,
    Permutation,
    Subgroup,
    centralizer,
    cyclic_subgroup,
    element_order,
    enumerate_group,
    is_conjugate_to_power,
    normalizer_of_cyclic,
    subgroup_generated,
)
from fixlocus.words import (
    EcsEntry,
    EpimorphismInstance,
    FuchsianSignature,
    Presentation,
    Word,
    evaluate_word,
    fuchsian_instance,
    riemann_hurwitz_genus,
    signature_to_presentation,
    validate_epimorphism,
)

__version__ = "0.1.0"
