from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

"""
Document Models for matmor

This module defines the JSON documents read and written by the CLI, as pydantic
models. Descriptors are plain data: they are validated for shape and ground-set
consistency here, and turned into domain objects by `matmor.loaders`.

Key Classes:
- MatroidDescriptor: tagged union over the matroid backings (`kind` discriminator).
- MorphismDescriptor, FlagDescriptor, GraphDescriptor, RotationDescriptor,
  SetFunctionDescriptor, FamilyDescriptor: the remaining input documents.
- Verdict: yes/no answer with failing clause and witness.
- ProbeReport: per-p outcome of the L_n grid probe (evidence only).
- Report: the envelope printed by every CLI subcommand.
"""


class Document(BaseModel):
    model_config = ConfigDict(extra='forbid')


class Rational(Document):
    """An exact rational in lowest terms."""
    num: int
    den: int

    @model_validator(mode='after')
    def _lowest_terms(self):
        if self.den <= 0:
            raise ValueError("den must be positive")
        from math import gcd
        if gcd(self.num, self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not in lowest terms")
        return self


RationalValue = Union[int, Rational]


class BasesDescriptor(Document):
    kind: Literal["bases"]
    n: int = Field(ge=0)
    bases: List[List[int]] = Field(min_length=1)

    @model_validator(mode='after')
    def _in_range(self):
        for basis in self.bases:
            for e in basis:
                if e < 1 or e > self.n:
                    raise ValueError(f"basis element {e} outside [1..{self.n}]")
            if len(set(basis)) != len(basis):
                raise ValueError(f"repeated element in basis {basis}")
        return self


class GraphMatroidDescriptor(Document):
    kind: Literal["graph"]
    vertices: int = Field(ge=1)
    edges: List[List[int]]

    @field_validator('edges')
    @classmethod
    def _pairs(cls, edges):
        for edge in edges:
            if len(edge) != 2:
                raise ValueError(f"edge {edge} is not a pair")
        return edges

    @model_validator(mode='after')
    def _endpoints(self):
        for u, v in self.edges:
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.vertices - 1}")
        return self


class CographicDescriptor(GraphMatroidDescriptor):
    """Cocycle matroid (dual of the cycle matroid) of a graph."""
    kind: Literal["cographic"]


class LinearDescriptor(Document):
    kind: Literal["linear"]
    p: int = Field(ge=2)
    matrix: List[List[int]] = Field(min_length=1)

    @field_validator('matrix')
    @classmethod
    def _rectangular(cls, matrix):
        if len({len(row) for row in matrix}) > 1:
            raise ValueError("matrix rows have different lengths")
        return matrix


class UniformDescriptor(Document):
    kind: Literal["uniform"]
    n: int = Field(ge=0)
    rank: int = Field(ge=0)

    @model_validator(mode='after')
    def _rank_bound(self):
        if self.rank > self.n:
            raise ValueError(f"rank {self.rank} exceeds n={self.n}")
        return self


class RankTableDescriptor(Document):
    kind: Literal["rank_table"]
    n: int = Field(ge=0)
    values: List[int]

    @model_validator(mode='after')
    def _complete(self):
        if len(self.values) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} values, got {len(self.values)}")
        return self


MatroidDescriptor = Annotated[
    Union[BasesDescriptor, GraphMatroidDescriptor, CographicDescriptor, LinearDescriptor, UniformDescriptor,
          RankTableDescriptor],
    Field(discriminator='kind'),
]


def descriptor_size(desc) -> int:
    """Ground-set size declared by a matroid descriptor."""
    if isinstance(desc, GraphMatroidDescriptor):
        return len(desc.edges)
    if isinstance(desc, LinearDescriptor):
        return len(desc.matrix[0])
    return desc.n


class MorphismDescriptor(Document):
    map: List[int]
    source: MatroidDescriptor
    target: MatroidDescriptor

    @model_validator(mode='after')
    def _map_fits(self):
        n, m = descriptor_size(self.source), descriptor_size(self.target)
        if len(self.map) != n:
            raise ValueError(f"map has {len(self.map)} entries but the source has {n} elements")
        for i, j in enumerate(self.map, start=1):
            if j < 1 or j > m:
                raise ValueError(f"map sends {i} to {j}, outside the target ground set [1..{m}]")
        return self


class FlagDescriptor(Document):
    constituents: List[MatroidDescriptor] = Field(min_length=1)

    @model_validator(mode='after')
    def _common_ground_set(self):
        sizes = {descriptor_size(c) for c in self.constituents}
        if len(sizes) > 1:
            raise ValueError(f"constituents live on different ground sets: sizes {sorted(sizes)}")
        return self


class GraphDescriptor(Document):
    vertices: int = Field(ge=1)
    edges: List[List[int]]

    @model_validator(mode='after')
    def _endpoints(self):
        for edge in self.edges:
            if len(edge) != 2:
                raise ValueError(f"edge {edge} is not a pair")
            u, v = edge
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.vertices - 1}")
        return self


class RotationDescriptor(Document):
    rotation: List[List[List[int]]]

    @field_validator('rotation')
    @classmethod
    def _edge_ends(cls, rotation):
        for cycle in rotation:
            for end in cycle:
                if len(end) != 2 or end[1] not in (0, 1):
                    raise ValueError(f"edge-end {end} must be [edge, 0|1]")
        return rotation


class SetFunctionDescriptor(Document):
    n: int = Field(ge=0)
    values: List[RationalValue]

    @model_validator(mode='after')
    def _complete(self):
        if len(self.values) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} values, got {len(self.values)}")
        return self


class PolynomialTerm(Document):
    exps: List[int]
    num: int
    den: int = Field(default=1, ge=1)


class FamilyDescriptor(Document):
    n: int = Field(ge=0)
    sets: List[List[int]]

    @model_validator(mode='after')
    def _in_range(self):
        for s in self.sets:
            for e in s:
                if e < 1 or e > self.n:
                    raise ValueError(f"element {e} outside [1..{self.n}]")
        return self


class Verdict(BaseModel):
    """
    Outcome of a yes/no check.

    `clause` names the failing condition and `witness` holds JSON-ready data
    pinning it down. A passing verdict has neither.
    """
    ok: bool
    clause: Optional[str] = None
    witness: Optional[Dict[str, Any]] = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def yes(cls) -> "Verdict":
        return cls(ok=True)

    @classmethod
    def no(cls, clause: str, **witness) -> "Verdict":
        return cls(ok=False, clause=clause, witness=witness)


class ProbePoint(BaseModel):
    p: Rational
    verdict: Verdict


class ProbeReport(BaseModel):
    """
    Grid evidence for L_n membership.

    A failure at any p is a proof of non-membership. Passing every grid point
    only shows consistency with membership.
    """
    outcome: Literal["not_in_Ln", "consistent_with_membership"]
    evidence_only: bool
    failing_p: Optional[Rational] = None
    points: List[ProbePoint]


class ConsistencyReport(BaseModel):
    """
    Joint L_n probe and M-natural-concavity check.

    `contradiction` is set when the grid finds no failure while the function is
    not M-natural-concave: either the grid is too coarse or something is wrong.
    """
    probe: ProbeReport
    mnat_concave: Verdict
    contradiction: bool


class Report(BaseModel):
    command: List[str]
    inputs_digest: str
    result: Any
    timing: Optional[float] = None
