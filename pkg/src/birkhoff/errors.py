"""Exception hierarchy shared by every module.

Three failure families exist: bad usage of the API or CLI, malformed input
files, and violations of internal exact cross-checks.  Nothing here is ever
raised for a merely inconvenient input; resonant frequency vectors, for
example, are reported, not rejected.
"""


class UsageError(Exception):
    """The caller asked for something the contract forbids.

    Examples: mixing series of different truncation orders, applying the
    one-degree-of-freedom pipeline to a multi-dimensional Hamiltonian, or a
    generator with terms of degree below 3.
    """


class ParseError(UsageError):
    """An input document (JSON problem file, rational literal) is malformed."""


class InvalidCodeError(UsageError):
    """A tree code tuple violates one of its validity conditions.

    The message names the violated condition so callers can report it.
    """


class InternalCheckError(Exception):
    """An always-on exact self-validation failed.

    This indicates a defect in the library itself, never in user input, so it
    deliberately does not extend UsageError.
    """
