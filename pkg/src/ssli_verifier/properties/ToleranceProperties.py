"""properties/ToleranceProperties.py"""

from pydantic import BaseModel, ConfigDict, field_validator

from ..schema.exceptions import ConfigError


class ToleranceProperties(BaseModel):
    model_config = ConfigDict(frozen=True)

    # Relative tolerance on the larger side of every hypothesis line, defaults to 1e-12.
    hypothesis: float = 1e-12
    # Relative tolerance on product/determinant/sum equalities, defaults to 1e-12.
    equality: float = 1e-12
    # Absolute tolerance on the totals compared by majorization, defaults to 1e-9.
    majorization_sum: float = 1e-9
    # Dead zone of the campaign violation rule, defaults to 1e-9.
    violation: float = 1e-9
    # Entrywise threshold of the equality-case rigidity check, defaults to 1e-8.
    rigidity: float = 1e-8
    # Slack of the optimality sampling check, defaults to 1e-8.
    optimality: float = 1e-8

    @field_validator("*")
    @classmethod
    def _non_negative(cls, value: float, info) -> float:
        if value < 0:
            raise ConfigError(f"tolerance '{info.field_name}' must be non-negative, got {value}")
        return value
