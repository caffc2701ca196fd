"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A configured resource cap (time budget, cache bytes, oracle atom cap) was hit.

    `stats` carries whatever run statistics were accumulated up to the point
    of failure, or None when the failing operation keeps no stats.
    """

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats
