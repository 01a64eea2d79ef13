"""Dichotomous and neighborly codes over the alphabet {0, 1, *}."""

from .codes import (
    Code,
    Partition,
    ValidationReport,
    format_code,
    mirror_slice,
    opposing_union,
    parse_code,
    partition_at,
    slice_bound_check,
    slice_code,
    validate,
    volume,
)
from .inflation import (
    InflationTrace,
    SliceState,
    inflate,
    inflate_all,
    inflate_at,
    slice_state,
    verify_structure_corollary,
)
from .search import SearchResult, oracle_check, random_code, search_max, search_max_naive
from .simplex import Simplex, build_code, facet_hyperplanes, neighborly_pair_2d, parse_simplices
from .transforms import Transform, apply_transform, are_isomorphic, canonical_form, standardize
from .words import ONE, STAR, ZERO, Letter, Word, classify_pair, dichotomy_positions, parse_word, weight

__version__ = "0.1.0"
