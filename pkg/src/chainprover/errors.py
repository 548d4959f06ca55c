"""Exception hierarchy shared across the package."""

from __future__ import annotations


class ChainProverError(Exception):
    pass


# -- logic ------------------------------------------------------------------

class FolSyntaxError(ChainProverError, ValueError):
    """Surface text could not be parsed.

    ``offset`` is the character position of the offending token and
    ``expected`` the token kinds that would have been accepted there.
    """

    def __init__(self, message: str, text: str, offset: int, expected=()):
        self.text = text
        self.offset = offset
        self.expected = tuple(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected {', '.join(self.expected)})"
        super().__init__(detail)


class FreeVariableError(ChainProverError, ValueError):
    def __init__(self, names):
        self.names = tuple(sorted(names))
        super().__init__(f"free variable(s): {', '.join(self.names)}")


class ArityMismatchError(ChainProverError, ValueError):
    def __init__(self, pred: str, arities):
        self.pred = pred
        self.arities = tuple(sorted(arities))
        super().__init__(f"predicate {pred!r} used with arities {self.arities}")


class NameCollisionError(ChainProverError, ValueError):
    def __init__(self, target: str, sources):
        self.target = target
        self.sources = tuple(sorted(sources))
        super().__init__(f"names {self.sources} all normalize to {target!r}")


# -- tptp -------------------------------------------------------------------

class InvalidNameError(ChainProverError, ValueError):
    pass


class UnnormalizedFormulaError(ChainProverError, ValueError):
    pass


# -- engine -----------------------------------------------------------------

class EngineError(ChainProverError, RuntimeError):
    pass


class GroundingBudgetExceeded(EngineError):
    pass


# -- verification -----------------------------------------------------------

class ContradictionError(ChainProverError):
    """Premises entail both a statement and its negation."""


class LabelMismatchError(ChainProverError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"conclusion verifies as {got.value}, label is {expected.value}")


class IndeterminateError(ChainProverError):
    """Raised under the strict policy when the engine could not decide."""


# -- nl2fol -----------------------------------------------------------------

class TemplateMissingError(ChainProverError, FileNotFoundError):
    pass


class MissingIndexError(ChainProverError, ValueError):
    def __init__(self, section: str, missing=(), duplicates=()):
        self.section = section
        self.missing = tuple(missing)
        self.duplicates = tuple(duplicates)
        parts = []
        if self.missing:
            parts.append(f"missing {list(self.missing)}")
        if self.duplicates:
            parts.append(f"duplicated {list(self.duplicates)}")
        super().__init__(f"{section}: " + "; ".join(parts))


class UnparseableFormulaError(ChainProverError, ValueError):
    def __init__(self, line: str, cause: Exception):
        self.line = line
        self.cause = cause
        super().__init__(f"cannot parse {line!r}: {cause}")


class AnswerExtractionError(ChainProverError, ValueError):
    pass


class TransportError(ChainProverError):
    pass


class TranslationFailed(ChainProverError):
    def __init__(self, attempts: int, reasons):
        self.attempts = attempts
        self.reasons = list(reasons)
        super().__init__(f"translation failed after {attempts} attempt(s): {self.reasons[-1] if self.reasons else ''}")


# -- metrics ----------------------------------------------------------------

class EmptyBatchError(ChainProverError, ValueError):
    pass


class NoExecutedInstancesError(ChainProverError, ValueError):
    pass


class LengthMismatchError(ChainProverError, ValueError):
    pass


class TokenizeError(ChainProverError, ValueError):
    pass


class EquivalenceUndecidedError(ChainProverError):
    pass


class NotMutableError(ChainProverError, ValueError):
    pass
