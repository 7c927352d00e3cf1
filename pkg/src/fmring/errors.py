"""Exception hierarchy shared by every module of the package."""


class FmringError(Exception):
    pass


class StructuralError(FmringError):
    """Input has the wrong shape, is not canonical, or mixes rings/orders."""


class PreconditionError(FmringError):
    pass


class GuardError(FmringError):
    """An enumeration would exceed its size guard."""


class SchemaError(FmringError):
    """A JSON document does not match the expected schema.

    ``path`` is a JSONPath-like location such as ``$.s[0][1]``.
    """

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
