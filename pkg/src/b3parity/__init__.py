"""Parity toolkit for 3-regular partitions.

Truncated power series over selectable coefficient rings, binary quadratic
form representation counting, finite certification of eta-quotient
congruences, Euler-pair combinatorics, and verification campaigns.
"""

from b3parity.campaigns import (
    CampaignReport,
    conjecture_n2_scan,
    inverse_data,
    parity_series,
    prime_class_scan,
    run_theorem,
)
from b3parity.certify import CertInstance, certification_table, verify_instance
from b3parity.quadforms import QuadForm, class_number, classify_prime, rep_count
from b3parity.residues import ResidueSet
from b3parity.series import (
    CoefficientSeries,
    EtaExponents,
    Ring,
    b3_family,
    eta_quotient_series,
    partition_series,
    series_parity_at,
)

__all__ = [
    "CampaignReport",
    "CertInstance",
    "CoefficientSeries",
    "EtaExponents",
    "QuadForm",
    "ResidueSet",
    "Ring",
    "b3_family",
    "certification_table",
    "class_number",
    "classify_prime",
    "conjecture_n2_scan",
    "eta_quotient_series",
    "inverse_data",
    "parity_series",
    "partition_series",
    "prime_class_scan",
    "rep_count",
    "run_theorem",
    "series_parity_at",
    "verify_instance",
]

__version__ = "0.1.0"
