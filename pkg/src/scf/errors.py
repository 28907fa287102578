"""Exception hierarchy shared by the engines and the CLI."""


class ScfError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(ScfError, ValueError):
    """Malformed or out-of-contract arguments."""


class DegenerateWitness(InvalidInput):
    """Parameters for which the witness construction collapses."""


class Refusal(ScfError):
    """The engine declines the request (rank limits, unsupported embeddings)."""


class NoWitness(ScfError):
    """No witness exists for the requested configuration."""
