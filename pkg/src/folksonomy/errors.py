"""Exception types shared across the pipeline."""


class FolksonomyError(Exception):
    """Base class for all library errors."""


class CorpusError(FolksonomyError):
    """Input corpus could not be read or parsed."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class ConfigError(FolksonomyError, ValueError):
    """A configuration value is out of range or malformed."""


class UnknownTermError(FolksonomyError, KeyError):
    """A concept/term was requested that the structure does not contain."""

    def __init__(self, term, suggestions=()):
        self.term = term
        self.suggestions = tuple(suggestions)
        msg = f"unknown concept {term!r}"
        if self.suggestions:
            msg += "; nearby: " + ", ".join(self.suggestions)
        super().__init__(msg)

    def __str__(self):
        return self.args[0]
