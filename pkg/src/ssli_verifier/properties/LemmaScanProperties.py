"""properties/LemmaScanProperties.py"""

from pydantic import BaseModel, ConfigDict


class LemmaScanProperties(BaseModel):
    model_config = ConfigDict(frozen=True)

    r_min: float = 0.01
    r_max: float = 10.0
    # Number of r values, both ends included.
    r_steps: int = 1000
    # Number of phi intervals on [0, pi/3], so phi_steps + 1 values.
    phi_steps: int = 100
    tolerance: float = 1e-12
    fd_check: bool = False
