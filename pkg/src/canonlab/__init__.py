"""canonlab: exact certification of canonical subgroups of p-divisible
formal groups presented by display structure matrices over Witt vectors."""

from .canon import Certificate, certify, count_roots, structure_certificate
from .display import (
    DisplayData,
    HasseValue,
    base_change_tangent,
    hasse_invariant,
    is_triangular_mod_p,
    triangularize,
)
from .errors import (
    CanonlabError,
    DomainError,
    ExtensionRequiredError,
    GhostIntegralityError,
    InputError,
    InternalCheckError,
    StructureError,
)
from .fgl import (
    TruncatedSeries,
    exp_series,
    group_law,
    log_series,
    p_power_series,
    shape_check,
)
from .fglog import LogTable, check_hypotheses, compute_log
from .ring import INF, LocalFieldElem, format_elem, ordp, parse_elem
from .tropical import (
    HeightGraph,
    NewtonPolygon,
    cell_of,
    dual_cell,
    enumerate_cells,
    from_log_table,
    grid_scan,
    h_cells,
    inn_set,
    is_trop_point,
    newton_polygon,
    properness_check,
    roots_in_radius,
)
from .witt import WittVec, witt_add, witt_mul

__version__ = "0.1.0"
