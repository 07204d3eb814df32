"""Exception types shared by the model and simulator."""


class DomainError(ValueError):
    """An input lies outside the domain where a model formula is defined."""


class OutOfRangeError(DomainError):
    """A table lookup was requested outside the tabulated range."""


class ConfigError(ValueError):
    """Invalid configuration; ``key`` holds the dotted path of the offending entry."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)
