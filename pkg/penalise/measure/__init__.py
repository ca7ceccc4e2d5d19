"""
The tilted measure μ_φ, 𝒲-expectations, 𝒲^G probabilities and Λ_T.
"""
from penalise.measure.density import (
    lambda_T,
    lambda_T_batch,
    lambda_T_expectation,
    lambda_T_values,
    verify_lambda_reduction,
)
from penalise.measure.expectation import w_expectation, w_value, wG_probability
from penalise.measure.tilted import (
    TiltedBatch,
    TiltedSample,
    check_horizon,
    sample_last_exit,
    sample_tilted,
    sample_tilted_batch,
)
from penalise.models.estimate import Estimate, RatioEstimate

__all__ = [
    "Estimate",
    "RatioEstimate",
    "TiltedBatch",
    "TiltedSample",
    "check_horizon",
    "lambda_T",
    "lambda_T_batch",
    "lambda_T_expectation",
    "lambda_T_values",
    "sample_last_exit",
    "sample_tilted",
    "sample_tilted_batch",
    "verify_lambda_reduction",
    "w_expectation",
    "w_value",
    "wG_probability",
]
