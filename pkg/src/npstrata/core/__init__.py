"""Polygon algebra and stratum dimension arithmetic."""

from .parser import parse_polygon
from .polygon import (
    IsoFactor,
    NewtonPolygon,
    PolygonPartition,
    direct_sum,
    dominates,
    enumerate_polygons,
    format_polygon,
    is_indecomposable,
    iso_pair,
    nu,
    ordinary,
    pad_ordinary,
    partitions,
    supersingular,
)
from .strata import (
    StratumMetrics,
    codim_ag,
    dim_ag,
    dim_ag_stratum,
    e_dim,
    prank_stratum_dim,
    strict_inequality_holds,
    supersingular_dim_identity,
)

__all__ = [
    "IsoFactor",
    "NewtonPolygon",
    "PolygonPartition",
    "StratumMetrics",
    "codim_ag",
    "dim_ag",
    "dim_ag_stratum",
    "direct_sum",
    "dominates",
    "e_dim",
    "enumerate_polygons",
    "format_polygon",
    "is_indecomposable",
    "iso_pair",
    "nu",
    "ordinary",
    "pad_ordinary",
    "parse_polygon",
    "partitions",
    "prank_stratum_dim",
    "strict_inequality_holds",
    "supersingular",
    "supersingular_dim_identity",
]
