"""Error taxonomy shared by every module.

Each class maps to one failure family so callers (CLI exit codes, HTTP
status mapping) can dispatch on type alone.
"""


class EncoderLabError(Exception):
    """Base class for all package errors."""


class ConfigurationError(EncoderLabError):
    """A knob is outside its allowed range (qubit cap, resolution, hyperparameters)."""


class CircuitError(EncoderLabError):
    """A gate references a qubit the register does not have, or is malformed."""


class NotFoundError(EncoderLabError):
    """A catalog id (dataset, encoder, session) does not exist."""


class ContractError(EncoderLabError):
    """An operation precondition was violated (bad lengths, missing classes, ...)."""


class TransportError(EncoderLabError):
    """An emit sink or stream failed mid-run; the run aborted."""
