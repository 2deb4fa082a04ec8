from .CampaignRunner import (CampaignRunner, TrialCsvWriter, csv_header, elem_sym_rows, replay_record,
                             run_conjecture_campaign, run_optimality_campaign, run_theorem3_campaign)
from .counterexamples import (CasePattern, PinnedCase, PinnedValue, example_four_numbers, example_linearized,
                              example_not_majorization, example_relaxed_product, example_without_e2,
                              observed_pattern, pinned_counterexamples)
from .sampling import (block_rng, equal_product_logs, premise_logs, quaternions_to_rotations, random_invertible,
                       random_rotations, sample_equal_product_pair, sample_premise_pair, shard_seed)

__all__ = [
    "CampaignRunner",
    "CasePattern",
    "PinnedCase",
    "PinnedValue",
    "TrialCsvWriter",
    "block_rng",
    "csv_header",
    "elem_sym_rows",
    "equal_product_logs",
    "example_four_numbers",
    "example_linearized",
    "example_not_majorization",
    "example_relaxed_product",
    "example_without_e2",
    "observed_pattern",
    "pinned_counterexamples",
    "premise_logs",
    "quaternions_to_rotations",
    "random_invertible",
    "random_rotations",
    "replay_record",
    "run_conjecture_campaign",
    "run_optimality_campaign",
    "run_theorem3_campaign",
    "sample_equal_product_pair",
    "sample_premise_pair",
    "shard_seed",
]
