"""Interval arithmetic, enclosures and certified optimisation."""

from anzb.numerics.certify import (
    CertificateRequest,
    OptimumCertificate,
    Status,
    Verdict,
    certified_min,
    certified_sup,
    maximize,
    minimize,
    verify_monotone,
    verify_nonneg,
)
from anzb.numerics.enclosure import Enclosure
from anzb.numerics.interval import DEFAULT_PREC, Interval, iv

__all__ = [
    "CertificateRequest",
    "DEFAULT_PREC",
    "Enclosure",
    "Interval",
    "OptimumCertificate",
    "Status",
    "Verdict",
    "certified_min",
    "certified_sup",
    "iv",
    "maximize",
    "minimize",
    "verify_monotone",
    "verify_nonneg",
]
