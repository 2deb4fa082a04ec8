"""properties/CampaignProperties.py"""

from pydantic import BaseModel, ConfigDict


class CampaignProperties(BaseModel):
    model_config = ConfigDict(frozen=True)

    # Campaign mode, available options are 'conjecture', 'theorem3' and 'optimality'.
    mode: str = "conjecture"
    n: int = 3
    trials: int = 10_000
    seed: int = 0
    spread: float = 1.0
    # Trials per seeding block; changing it changes the sampled stream.
    block_size: int = 4096
    # Worker threads for campaign blocks, overridden by SSLI_THREADS.
    threads: int = 1
    rot_samples: int = 1000
    premise_attempts: int = 8
