"""Restriction of scalars for torsion modules over discrete valuation rings.

Maps the partition of an O-module to the partition of the same module viewed
over a subring o, derives the lower central series data of the matching
p-group extensions, counts the image sizes ``f_e(n)``, and checks all of it
against explicit Smith-form computations (:mod:`dvrpart.oracle`).
"""

from .errors import (
    DomainError,
    DvrPartError,
    PartitionParseError,
    PrecisionError,
    TrivialModuleError,
)
from .enumeration import (
    SequenceRow,
    closed_form_expected,
    divisibility_probe,
    f_e_count,
    f_e_table,
    partition_count,
    partitions_of,
)
from .invariants import ExtensionReport, extension_report, lcs_rank
from .partition import (
    Partition,
    RestrictionParams,
    conjugate,
    f_coeff,
    f_coeff_alt,
    format_partition,
    parse_partition,
    sub_partition,
    weight,
)
from .restriction import (
    InducedDecomposition,
    abelian_group_of,
    cyclotomic_ramification,
    restrict,
    restrict_single,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "DvrPartError",
    "ExtensionReport",
    "InducedDecomposition",
    "Partition",
    "PartitionParseError",
    "PrecisionError",
    "RestrictionParams",
    "SequenceRow",
    "TrivialModuleError",
    "abelian_group_of",
    "closed_form_expected",
    "conjugate",
    "cyclotomic_ramification",
    "divisibility_probe",
    "extension_report",
    "f_coeff",
    "f_coeff_alt",
    "f_e_count",
    "f_e_table",
    "format_partition",
    "lcs_rank",
    "parse_partition",
    "partition_count",
    "partitions_of",
    "restrict",
    "restrict_single",
    "sub_partition",
    "weight",
]
