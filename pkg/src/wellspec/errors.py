"""Exception hierarchy for wellspec."""


class WellspecError(Exception):
    """Base class for all wellspec errors."""


class InputError(WellspecError, ValueError):
    """Invalid user input: files, columns, cells, specs or parameter ranges."""


class RegressionError(WellspecError):
    """A regressor could not be fitted."""


class UndefinedStatisticError(WellspecError):
    """A requested quantity is mathematically undefined for the given data."""
