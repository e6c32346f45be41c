"""3-edge augmented Zarankiewicz numbers and SOS rank certificates for biquadratic forms."""

from .certificates import (
    RankCertificate,
    VectorAssignment,
    certify_sos_rank,
    check_gram_pattern,
    three_edge_replay,
    vector_assignment,
    verify_q55,
)
from .conditions import (
    Condition,
    ConditionConfig,
    ConditionReport,
    check_2edge,
    check_3edge_extension,
    check_3edge_saturation,
    is_c4_free,
    is_generalized_cycle_free,
)
from .forms import (
    BilinearForm,
    BiquadraticForm,
    MonomialKey,
    SosDecomposition,
    build_form,
    canonical_decomposition,
    coefficient,
    expand,
    independent_rank,
)
from .graph import (
    AugmentedGraph,
    Cell,
    Edge2,
    Edge3,
    OccupancyGrid,
    canonical_code,
    is_simple,
    occupied_cells,
)
from .search import (
    SearchConfig,
    SearchResult,
    Statistic,
    enumerate_extremal_c4free,
    max_augmentation,
    z3_full,
    z3_limited,
    z_limited,
    zarankiewicz,
)

__version__ = "0.1.0"
