"""Hall subgroups of finite permutation groups.

Existence, conjugacy and dominance of pi-Hall subgroups, plus the
composition-series test for existence via induced automorphism groups.
Points are 1-based at every public interface.
"""

from .catalog import (
    GroupSpec,
    alternating_group,
    builtin,
    cyclic_group,
    dihedral_group,
    direct_product,
    extend_by_inverse_transpose,
    flag_stabilizer,
    general_linear_group,
    parse_group_file,
    symmetric_group,
    write_group_file,
)
from .criterion import (
    CriterionReport,
    almost_simple_epi,
    epi_criterion,
    lift_hall,
    obstruction_element,
    subdirect_product,
)
from .errors import InputError, ResourceError
from .group import (
    PermutationGroup,
    derived_subgroup,
    group_from_generators,
    membership_test,
    normal_closure,
    orbit_partition,
    point_stabilizer,
)
from .hall import (
    HallClassification,
    classify_ECD,
    hall_classes,
    hall_extension_over_normal,
    is_hall_subgroup,
    normal_series_dpi,
)
from .homomorphism import GroupHomomorphism, quotient, quotient_on_cosets
from .perm import Permutation
from .primes import PrimeSet
from .search import centralizer, normalizer, subgroup_conjugacy_witness
from .sections import (
    InducedAutomorphismGroup,
    Section,
    induced_automorphism_group,
    section_centralizer,
    section_normalizer,
    section_transport,
)
from .series import (
    SeriesChain,
    chief_series,
    composition_series,
    is_simple,
    minimal_normal_subgroups,
    refine_to_composition_series,
)
from .sylow import sylow_subgroup

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
