"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument violates a documented precondition."""


class NoArborescence(Exception):
    """The digraph has no spanning arborescence with the requested root."""


class ResourceLimit(Exception):
    """An exhaustive routine was asked to handle an instance above its size guard."""


class ParseError(ValueError):
    """An instance document does not match the expected schema."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
