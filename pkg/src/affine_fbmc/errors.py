"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Requested parameters are unsupported or mutually inconsistent."""


class InputError(ValueError):
    """Runtime data does not match the declared shape or value range."""
