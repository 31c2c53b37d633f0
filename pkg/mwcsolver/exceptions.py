"""mwcsolver exceptions"""


class MwcSolverException(Exception):
    """Generic package Exception Container"""

    def __init__(self, message=''):
        super().__init__(message)
        self.message = message

    def __repr__(self):
        return f'{self.__class__.__name__}({self.message})'


class InstanceParseError(MwcSolverException):
    """Instance file could not be parsed or failed validation"""


class InstanceTooLarge(MwcSolverException):
    """Instance exceeds the size guard of the exact solver"""


class ConfigError(MwcSolverException):
    """Invalid solver configuration"""


class SolutionError(MwcSolverException):
    """Reported clique failed revalidation against the graph"""
