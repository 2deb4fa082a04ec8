from .campaign import CampaignConfig, CampaignMode, CampaignSummary, TrialRecord
from .exceptions import (ArgumentError, ConfigError, DomainError, FileAccessError, InputNotFoundError, InputParseError,
                         SsliError, TheoremViolationError, UsageError)
from .reports import Formulation, GridPoint, HypothesisReport, LemmaScanReport

__all__ = [
    "ArgumentError",
    "CampaignConfig",
    "CampaignMode",
    "CampaignSummary",
    "ConfigError",
    "DomainError",
    "FileAccessError",
    "Formulation",
    "GridPoint",
    "HypothesisReport",
    "InputNotFoundError",
    "InputParseError",
    "LemmaScanReport",
    "SsliError",
    "TheoremViolationError",
    "TrialRecord",
    "UsageError",
]
