from .CampaignProperties import CampaignProperties
from .LemmaScanProperties import LemmaScanProperties
from .SsliProperties import SsliProperties
from .ToleranceProperties import ToleranceProperties

__all__ = [
    "CampaignProperties",
    "LemmaScanProperties",
    "SsliProperties",
    "ToleranceProperties",
]
