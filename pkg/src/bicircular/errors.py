"""Exception types shared by the package."""


class MatroidError(ValueError):
    """Bad input to a matroid or graph operation (unknown names, overlaps...)."""


class PreconditionError(MatroidError):
    """An operation was called outside its stated hypotheses."""


class DefectError(RuntimeError):
    """Two independent computations disagree. Always a bug, never user error."""


class ParseError(ValueError):
    """Text input could not be parsed. Carries line/column when known."""

    def __init__(self, msg, line=None, col=None, source=None):
        self.msg = msg
        self.line = line
        self.col = col
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if col is not None:
                where += f"{col}:"
        super().__init__(f"{where} {msg}" if where else msg)


class FormulaSyntaxError(ParseError):
    pass


class UnboundVariableError(KeyError):
    """Evaluation hit a free variable with no binding."""

    def __str__(self):
        return f"unbound variable(s): {', '.join(self.args[0])}" if self.args else "unbound variable"
