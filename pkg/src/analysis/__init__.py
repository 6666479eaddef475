"""Verification suite over sampled graphs."""

from .census import CensusReport, canonical_code, canonical_table, edges_of, expected_classes, induced_census
from .cliques import clique_number, find_clique, is_ks_free
from .comparison import ComparisonReport, Verdict, compare_matrix_distributions, pattern_tally
from .degree_profile import DegreeProfileComparison, compare_degree_profiles, degree_profile
from .extension import ExtensionReport, extension_stats, extension_witness
from .purity import PurityReport, duplicate_neighbourhoods

__all__ = [
    "CensusReport",
    "ComparisonReport",
    "DegreeProfileComparison",
    "ExtensionReport",
    "PurityReport",
    "Verdict",
    "canonical_code",
    "canonical_table",
    "clique_number",
    "compare_degree_profiles",
    "compare_matrix_distributions",
    "degree_profile",
    "duplicate_neighbourhoods",
    "edges_of",
    "expected_classes",
    "extension_stats",
    "extension_witness",
    "find_clique",
    "induced_census",
    "is_ks_free",
    "pattern_tally",
]
