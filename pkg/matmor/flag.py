"""
Flag Matroids

A flag matroid is a sequence M_1, ..., M_l of matroids on one ground set in
which each M_k is a quotient of M_{k+1} (equality allowed). The finest
constituent comes last.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .config import settings
from .errors import ConsistencyError, DescriptorError, FlagValidationError, GroundSetMismatch
from .matroid import Matroid, contract, delete, truncate
from .morphism import is_quotient
from .utils import status


@dataclass(frozen=True, eq=False)
class FlagMatroid:
    constituents: Tuple[Matroid, ...]

    @property
    def n(self) -> int:
        return self.constituents[0].n

    @property
    def length(self) -> int:
        return len(self.constituents)

    def __iter__(self):
        return iter(self.constituents)

    def __getitem__(self, k: int) -> Matroid:
        return self.constituents[k]

    def __len__(self) -> int:
        return len(self.constituents)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FlagMatroid):
            return NotImplemented
        return self.constituents == other.constituents


def validate_flag(constituents: Sequence[Matroid]) -> FlagMatroid:
    """
    Check that each constituent is a quotient of the next one.

    Raises:
        GroundSetMismatch: constituents on different ground sets.
        FlagValidationError: with the 1-based index k of the failing pair
            (M_k, M_{k+1}) and the rank-difference witness.
    """
    constituents = tuple(constituents)
    if not constituents:
        raise DescriptorError("a flag matroid needs at least one constituent")
    n = constituents[0].n
    for M in constituents[1:]:
        if M.n != n:
            raise GroundSetMismatch(n, M.n)
    for k in range(len(constituents) - 1):
        verdict = is_quotient(constituents[k + 1], constituents[k])
        if not verdict:
            raise FlagValidationError(k + 1, verdict.witness)
    status("flag", f"validated flag of length {len(constituents)} on {n} elements")
    return FlagMatroid(constituents)


def _revalidate(flag: FlagMatroid, cross_check: Optional[bool]) -> FlagMatroid:
    if settings.cross_check if cross_check is None else cross_check:
        try:
            validate_flag(flag.constituents)
        except FlagValidationError as e:
            raise ConsistencyError("a minor of a flag matroid is not a flag matroid", e.witness)
    return flag


def flag_delete(flag: FlagMatroid, i: int, cross_check: Optional[bool] = None) -> FlagMatroid:
    return _revalidate(FlagMatroid(tuple(delete(M, i) for M in flag)), cross_check)


def flag_contract(flag: FlagMatroid, i: int, cross_check: Optional[bool] = None) -> FlagMatroid:
    return _revalidate(FlagMatroid(tuple(contract(M, i) for M in flag)), cross_check)


def truncation_chain(M: Matroid, ranks: Sequence[int]) -> FlagMatroid:
    """Flag of truncations of M to the given ranks, listed coarsest first."""
    return validate_flag([truncate(M, r) if r < M.full_rank else M for r in sorted(ranks)])
