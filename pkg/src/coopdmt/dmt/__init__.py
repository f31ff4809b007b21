"""Diversity-multiplexing tradeoff: closed forms and region optimizers."""

from .closed_form import TradeoffPoint, dmt_closed_form, emit_curve
from .region import (ExponentTuple, nested_grid_min, region_infimum_cma, region_infimum_ddf,
                     region_infimum_ddf_multi, region_infimum_naf)

__all__ = [
    "TradeoffPoint", "dmt_closed_form", "emit_curve", "ExponentTuple", "nested_grid_min",
    "region_infimum_naf", "region_infimum_ddf", "region_infimum_ddf_multi", "region_infimum_cma",
]
