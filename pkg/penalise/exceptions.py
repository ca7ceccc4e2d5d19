"""
Custom exceptions for the penalise package.
"""


class PenaliseError(Exception):
    """Base exception for penalise errors."""
    pass


class ArgumentError(PenaliseError, ValueError):
    """Exception raised when an argument violates an operation's precondition."""
    pass


class IntegrandNotFiniteError(PenaliseError):
    """Exception raised when an integrand is not finite at a quadrature node."""
    pass


class NotApproximableError(PenaliseError):
    """Exception raised when an integrand lies outside the approximable class."""
    pass


class ConfigurationError(PenaliseError):
    """Exception raised when a configuration or tilting function is invalid."""
    pass


class NonFiniteFunctionalError(PenaliseError):
    """Exception raised when too many Monte Carlo evaluations are not finite."""
    pass


class DegenerateWeightError(PenaliseError):
    """Exception raised when a reweighting denominator is indistinguishable from 0."""
    pass


class IdentityCheckError(PenaliseError):
    """Exception raised when an algebraic path identity is violated."""
    pass


class StepFunctionParseError(PenaliseError):
    """Exception raised when a step function cannot be parsed from JSON."""
    pass
