"""Exception hierarchy shared by every stage of the pipeline."""


class PontrjaginError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class GradingError(PontrjaginError):
    """A degree constraint was violated (inhomogeneous input, bad degree)."""


class SubstitutionError(PontrjaginError):
    pass


class ContextError(PontrjaginError):
    """Two objects live over different generator sets."""


class ReductionError(PontrjaginError):
    """A presentation still carries a relation that should have been eliminated."""


class NotCartanPairError(PontrjaginError):
    pass


class ArityError(PontrjaginError):
    pass


class InvalidLieAlgebraError(PontrjaginError):
    pass


class OrientationError(PontrjaginError):
    """A rewrite rule does not strictly decrease the word order."""


class NonIntegralDivisionError(PontrjaginError):
    pass


class CatalogError(PontrjaginError):
    """Unknown catalog case or parameters outside the family."""


class SpecSyntaxError(PontrjaginError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class SpecSemanticError(PontrjaginError):
    pass


class StageError(PontrjaginError):
    """A pipeline stage failed; ``stage`` names it and ``cause`` is the original error."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
