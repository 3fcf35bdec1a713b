"""Exact multifractal analysis of modular subset-sum functions."""

__version__ = "0.1.0"

from .config import Caps
from .errors import (
    AssumptionViolated,
    CapExceeded,
    SsFractalError,
    ValidationError,
)
from .hausdorff import (
    ComponentDecomposition,
    DimensionReport,
    ImageSet,
    attractor_digits,
    components,
    image_set,
    image_set_explicit,
    similarity_dimension,
)
from .instance import (
    Instance,
    InstanceFamily,
    density,
    family_arithmetic,
    family_explicit,
    family_random_density,
    family_superincreasing,
    gen_arithmetic,
    gen_random_density,
    gen_superincreasing,
    load_instance,
    new_instance,
    save_instance,
)
from .kernels import BACKEND
from .multiplicity import (
    CollisionClass,
    MultiplicityHistogram,
    MultiplicityVector,
    collision_classes,
    multiplicity_bruteforce,
    multiplicity_dp,
    multiplicity_histogram,
)
from .partition import (
    CollisionPair,
    LowerBoundReport,
    WeakPartitionSolution,
    canonicalize,
    collision_to_partition,
    expand_collisions,
    four_collision,
    has_collision,
    lower_bound,
    weak_partition_enumerate,
    weighted_zero_count_dp,
)
from .spectrum import (
    FamilyDimensionEstimate,
    SingularityEntry,
    Spectrum,
    SpectrumPoint,
    dimension_extremes,
    dimension_info,
    dimension_q,
    family_dimension,
    nonmodular_density,
    singularity_strengths,
    spectrum,
)
