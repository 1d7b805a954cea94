class ConfigError(Exception):
    """Invalid run configuration (bad parameters, step-size rule violation)."""


class IntegrationError(Exception):
    """Numerical failure during integration (e.g. norm drift past tolerance)."""
