"""Refutation certificates for rational sums of squares."""

from ._core import (
    CertificateFormatError,
    InvalidArgument,
    PolynomialParseError,
    SolverError,
    certify,
    generate,
    normalize_certificate,
    parse_polynomial,
    verify,
)

__all__ = [
    "CertificateFormatError",
    "InvalidArgument",
    "PolynomialParseError",
    "SolverError",
    "certify",
    "generate",
    "normalize_certificate",
    "parse_polynomial",
    "verify",
]
