"""Schemas package - Pydantic models for reports."""

from src.schemas.base import BaseReport
from src.schemas.reports import ComparisonReport, SuiteResult, VerifyReport

__all__ = ["BaseReport", "ComparisonReport", "SuiteResult", "VerifyReport"]
