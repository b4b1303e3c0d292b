import logging


class CheckFailed(AssertionError):
    """A self-test assertion failed; witness holds the offending values."""

    def __init__(self, message, **witness):
        super().__init__(message)
        self.witness = witness


def expect(condition, message, **witness):
    if not condition:
        logging.error(f"{message}: {witness}")
        raise CheckFailed(message, **witness)
