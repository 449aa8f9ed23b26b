"""Root data, real forms, flag orbits and tempered series at desk scale."""

from .orbits import (
    OrbitConfig,
    OrbitReport,
    count_open_orbits,
    orbit_report,
    parabolic_subset,
    realization_configs,
)
from .presets import PRESET_IDS, GroupPreset, group_from_spec, preset
from .realform import (
    CartanClass,
    attach_involution,
    cayley_transform,
    classify_cartans,
    cuspidal_parabolic,
    merge_positive_systems,
    restricted_roots,
)
from .rootsys import RootDatum, TorusPoint, build_root_datum, varpi, weyl_group
from .series import (
    SeriesParam,
    bott_borel_weil,
    character_at,
    discrete_series_param,
    equivalence_reason,
    equivalent,
    hseries_param,
    orthogonality_check,
    q_lambda,
    realize,
    series_catalog,
)

__all__ = [
    "CartanClass",
    "GroupPreset",
    "OrbitConfig",
    "OrbitReport",
    "PRESET_IDS",
    "RootDatum",
    "SeriesParam",
    "TorusPoint",
    "attach_involution",
    "bott_borel_weil",
    "build_root_datum",
    "cayley_transform",
    "character_at",
    "classify_cartans",
    "count_open_orbits",
    "cuspidal_parabolic",
    "discrete_series_param",
    "equivalence_reason",
    "equivalent",
    "group_from_spec",
    "hseries_param",
    "merge_positive_systems",
    "orbit_report",
    "orthogonality_check",
    "parabolic_subset",
    "preset",
    "q_lambda",
    "realization_configs",
    "realize",
    "restricted_roots",
    "series_catalog",
    "varpi",
    "weyl_group",
]
