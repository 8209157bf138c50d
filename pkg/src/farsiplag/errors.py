"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`FarsiplagError`.  The CLI maps the two main branches onto exit
codes: :class:`DataError` -> 3, :class:`ResourceError` -> 4.
"""


class FarsiplagError(Exception):
    """Base class for all package errors."""


class DataError(FarsiplagError):
    """Bad input data: corpus files, labels, configs, scores."""


class ResourceError(FarsiplagError):
    """A lexicon or mapping table is missing or malformed."""


class ResourceMissing(ResourceError):
    pass


class MissingFile(DataError):
    pass


class BadLabel(DataError):
    pass


class DuplicateId(DataError):
    pass


class ConfigError(DataError):
    pass


class InvalidN(DataError, ValueError):
    pass


class GramSizeMismatch(DataError, ValueError):
    pass


class ConfigMismatch(DataError):
    pass


class MetricMismatch(DataError):
    pass


class EmptyGroup(DataError):
    pass


class InsufficientData(DataError):
    pass


class NonMonotoneGroups(DataError):
    pass
