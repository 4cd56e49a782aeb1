"""Exception hierarchy.

UserError subclasses describe bad input or unmet preconditions (CLI exit 1).
InternalError subclasses fire only when a theorem-backed consistency check
fails, which means a bug (CLI exit 2).
"""


class NilcplxError(Exception):
    pass


class UserError(NilcplxError):
    exit_code = 1


class InternalError(NilcplxError):
    exit_code = 2


class SourceSpan:
    __slots__ = ("line", "col", "end_col")

    def __init__(self, line, col, end_col=None):
        self.line = line
        self.col = col
        self.end_col = col + 1 if end_col is None else end_col

    def __repr__(self):
        return "SourceSpan(%d, %d, %d)" % (self.line, self.col, self.end_col)

    def __str__(self):
        return "line %d, col %d-%d" % (self.line, self.col, self.end_col)

    def __eq__(self, other):
        return isinstance(other, SourceSpan) and \
            (self.line, self.col, self.end_col) == (other.line, other.col, other.end_col)


class ParseError(UserError):
    def __init__(self, message, span=None):
        self.message = message
        self.span = span
        super().__init__("%s: %s" % (span, message) if span else message)


class ValidationError(UserError):
    pass


class NotIntegrable(ValidationError):
    """d of a generator has a nonzero (0,2) part."""

    def __init__(self, k, part02):
        self.k = k
        self.part02 = part02
        super().__init__("NotIntegrable w%d: (0,2) part %s" % (k, part02.pretty()))


class JacobiViolation(ValidationError):
    """d(d w_k) is a nonzero 3-form."""

    def __init__(self, k, residual):
        self.k = k
        self.residual = residual
        super().__init__("JacobiViolation w%d: d^2 = %s" % (k, residual.pretty()))


class SingularCoframeChange(UserError):
    pass


class NotAnIdeal(UserError):
    pass


class NotASubalgebra(UserError):
    pass


class NotNilpotent(UserError):
    pass


class PreconditionFailed(UserError):
    pass


class NotMaxN(PreconditionFailed):
    pass


class InternalConsistencyError(InternalError):
    pass


class InternalContradiction(InternalError):
    pass


class StructureTheoremViolation(InternalError):
    pass
