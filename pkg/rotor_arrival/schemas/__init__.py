"""Pydantic schemas for instance files, certificates and reports."""

from rotor_arrival.schemas.instance import (
    BigInt,
    CertificateFile,
    GeneralInstanceFile,
    PathInstanceFile,
)
from rotor_arrival.schemas.report import ClassReport, CompareReport, OracleReport, SolutionReport

__all__ = [
    "BigInt",
    "CertificateFile",
    "ClassReport",
    "CompareReport",
    "GeneralInstanceFile",
    "OracleReport",
    "PathInstanceFile",
    "SolutionReport",
]
