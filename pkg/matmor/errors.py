"""
Exception hierarchy for matmor.

Every domain failure derives from `MatmorError`; the CLI turns these into a JSON
error object and exit code 1. Checks that answer a yes/no question return a
`Verdict` instead of raising.
"""

from typing import Any, Dict, Optional


class MatmorError(Exception):
    """Base class for all matmor domain errors."""

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_payload(self) -> Dict[str, Any]:
        return {
            "type": type(self).__name__,
            "message": self.message,
            "witness": self.witness,
        }


class ElementOutOfRange(MatmorError, ValueError):
    def __init__(self, element: Any, n: int):
        super().__init__(f"element {element!r} is not in the ground set [1..{n}]",
                         {"element": element, "n": n})
        self.element = element
        self.n = n


class EnumerationBoundExceeded(MatmorError):
    def __init__(self, n: int, bound: int, what: str = "max_n"):
        super().__init__(f"n={n} exceeds the enumeration bound {what}={bound}",
                         {"n": n, "bound": bound, "setting": what})
        self.n = n
        self.bound = bound


class ExchangeAxiomViolation(MatmorError):
    def __init__(self, b1, b2, i):
        super().__init__(
            f"basis exchange fails for B1={sorted(b1)}, B2={sorted(b2)}, i={i}",
            {"B1": sorted(b1), "B2": sorted(b2), "i": i},
        )
        self.b1 = frozenset(b1)
        self.b2 = frozenset(b2)
        self.i = i


class GroundSetMismatch(MatmorError):
    def __init__(self, n: int, m: int):
        super().__init__(f"ground sets differ: [1..{n}] vs [1..{m}]", {"n": n, "m": m})


class NotAQuotient(MatmorError):
    pass


class FlagValidationError(MatmorError):
    def __init__(self, index: int, witness: Optional[Dict[str, Any]]):
        super().__init__(
            f"constituent {index} is not a quotient of constituent {index + 1}",
            {"index": index, **(witness or {})},
        )
        self.index = index


class EmptySliceError(MatmorError):
    def __init__(self, k: int):
        super().__init__(f"the quotient has no bases of cardinality {k}", {"k": k})
        self.k = k


class InvalidEmbedding(MatmorError):
    pass


class NotHomogeneousError(MatmorError):
    pass


class NonIntegralSetFunction(MatmorError):
    pass


class DescriptorError(MatmorError):
    pass


class ConsistencyError(MatmorError):
    """A redundant cross-check disagreed with the primary computation."""
