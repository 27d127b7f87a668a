"""
Descriptor Loading and Saving

JSON documents are validated by the pydantic models in `matmor.models` and then
turned into domain objects (`build_*`). The inverse direction (`describe_*`)
produces plain dicts, written out in canonical form: sorted keys, no
whitespace, a trailing newline. Canonical files survive a load/save round trip
byte for byte.
"""

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple, Union

from pydantic import TypeAdapter, ValidationError

from .errors import DescriptorError
from .flag import FlagMatroid, validate_flag
from .graphs import Graph, RotationSystem
from .matroid import (BasisMatroid, DualMatroid, GraphicMatroid, LinearMatroid, Matroid, UniformMatroid,
                      from_bases, from_rank_table)
from .models import (BasesDescriptor, CographicDescriptor, FamilyDescriptor, FlagDescriptor, GraphDescriptor,
                     GraphMatroidDescriptor, LinearDescriptor, MatroidDescriptor, MorphismDescriptor,
                     PolynomialTerm, RankTableDescriptor, Rational, RotationDescriptor, SetFunctionDescriptor,
                     UniformDescriptor)
from .morphism import MatroidMorphism
from .polynomial import Polynomial
from .setfunction import SetFunction
from .utils import mask_elements, status, subset_key

PathLike = Union[str, Path]

_matroid_adapter = TypeAdapter(MatroidDescriptor)
_polynomial_adapter = TypeAdapter(List[PolynomialTerm])


# Raw JSON


def read_json(path: PathLike) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise DescriptorError(f"malformed JSON in {path}: {e.msg} at line {e.lineno}",
                              {"path": str(path), "line": e.lineno})
    except OSError as e:
        raise DescriptorError(f"cannot read {path}: {e.strerror}", {"path": str(path)})


def _plain(value: Any):
    # numpy scalars from tables and DataFrames
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), default=_plain) + "\n"


def save(path: PathLike, doc: Any):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(canonical_json(doc))
    status("io", f"wrote {path}")


def inputs_digest(paths: Iterable[PathLike]) -> str:
    """sha256 over the raw bytes of the input files, in order."""
    digest = hashlib.sha256()
    for path in paths:
        with open(path, 'rb') as f:
            digest.update(f.read())
    return digest.hexdigest()


def _validate(adapter_or_model, data: Any, what: str):
    try:
        if isinstance(adapter_or_model, TypeAdapter):
            return adapter_or_model.validate_python(data)
        return adapter_or_model.model_validate(data)
    except ValidationError as e:
        errors = [{"loc": [str(x) for x in err["loc"]], "msg": err["msg"]} for err in e.errors()]
        raise DescriptorError(f"invalid {what} descriptor: {errors[0]['msg']}", {"errors": errors})


# Matroids


def build_matroid(data: Any) -> Matroid:
    desc = data if not isinstance(data, dict) else _validate(_matroid_adapter, data, "matroid")
    if isinstance(desc, BasesDescriptor):
        return from_bases(desc.n, desc.bases)
    if isinstance(desc, CographicDescriptor):
        return DualMatroid(GraphicMatroid(Graph(desc.vertices, tuple(tuple(e) for e in desc.edges))))
    if isinstance(desc, GraphMatroidDescriptor):
        return GraphicMatroid(Graph(desc.vertices, tuple(tuple(e) for e in desc.edges)))
    if isinstance(desc, LinearDescriptor):
        return LinearMatroid(desc.p, desc.matrix)
    if isinstance(desc, UniformDescriptor):
        return UniformMatroid(desc.n, desc.rank)
    if isinstance(desc, RankTableDescriptor):
        return from_rank_table(desc.n, desc.values)
    raise DescriptorError(f"unsupported matroid descriptor {type(desc).__name__}")


def _graph_payload(graph: Graph) -> Dict:
    return {"vertices": graph.vertices, "edges": [list(e) for e in graph.edges]}


def describe_matroid(M: Matroid) -> Dict:
    """Descriptor of M in the most specific kind its backing allows (a rank table otherwise)."""
    if isinstance(M, BasisMatroid):
        return {"kind": "bases", "n": M.n,
                "bases": [mask_elements(b) for b in sorted(M.basis_masks, key=subset_key)]}
    if isinstance(M, GraphicMatroid):
        return {"kind": "graph", **_graph_payload(M.graph)}
    if isinstance(M, DualMatroid) and isinstance(M.base, GraphicMatroid):
        return {"kind": "cographic", **_graph_payload(M.base.graph)}
    if isinstance(M, LinearMatroid):
        return {"kind": "linear", "p": M.p, "matrix": M.matrix.tolist()}
    if isinstance(M, UniformMatroid):
        return {"kind": "uniform", "n": M.n, "rank": M.r}
    return {"kind": "rank_table", "n": M.n, "values": [int(v) for v in M.rank_table()]}


# Morphisms and flags


def build_morphism(data: Any) -> MatroidMorphism:
    desc = _validate(MorphismDescriptor, data, "morphism")
    return MatroidMorphism(build_matroid(desc.source), build_matroid(desc.target), desc.map)


def describe_morphism(f: MatroidMorphism) -> Dict:
    return {"map": list(f.mapping), "source": describe_matroid(f.source), "target": describe_matroid(f.target)}


def build_flag(data: Any) -> FlagMatroid:
    """
    Raises:
        FlagValidationError: adjacent constituents are not quotients.
    """
    desc = _validate(FlagDescriptor, data, "flag")
    return validate_flag([build_matroid(c) for c in desc.constituents])


def describe_flag(flag: FlagMatroid) -> Dict:
    return {"constituents": [describe_matroid(M) for M in flag]}


# Graphs and embeddings


def build_graph(data: Any) -> Graph:
    desc = _validate(GraphDescriptor, data, "graph")
    return Graph(desc.vertices, tuple(tuple(e) for e in desc.edges))


def describe_graph(graph: Graph) -> Dict:
    return _graph_payload(graph)


def build_rotation(data: Any) -> RotationSystem:
    desc = _validate(RotationDescriptor, data, "rotation")
    return RotationSystem(tuple(tuple((e, end) for e, end in cycle) for cycle in desc.rotation))


def describe_rotation(rot: RotationSystem) -> Dict:
    return {"rotation": [[[e, end] for e, end in cycle] for cycle in rot.rotation]}


# Set functions, families, polynomials


def _rational(value: Union[int, Rational]) -> Fraction:
    return Fraction(value) if isinstance(value, int) else Fraction(value.num, value.den)


def build_setfunction(data: Any) -> SetFunction:
    desc = _validate(SetFunctionDescriptor, data, "setfunction")
    return SetFunction(desc.n, [_rational(v) for v in desc.values])


def describe_setfunction(r: SetFunction) -> Dict:
    return r.to_json()


def build_family(data: Any) -> Tuple[List[List[int]], int]:
    desc = _validate(FamilyDescriptor, data, "family")
    return desc.sets, desc.n


def build_polynomial(data: Any) -> Polynomial:
    terms = _validate(_polynomial_adapter, data, "polynomial")
    if not terms:
        raise DescriptorError("a polynomial file needs at least one term")
    nvars = len(terms[0].exps)
    if any(len(t.exps) != nvars for t in terms):
        raise DescriptorError("polynomial terms have different numbers of exponents")
    return Polynomial(nvars, [(t.exps, Fraction(t.num, t.den)) for t in terms])


def describe_polynomial(h: Polynomial) -> List[Dict]:
    return h.to_json()


# Files

BUILDERS = {
    "matroid": (build_matroid, describe_matroid),
    "morphism": (build_morphism, describe_morphism),
    "flag": (build_flag, describe_flag),
    "graph": (build_graph, describe_graph),
    "rotation": (build_rotation, describe_rotation),
    "setfunction": (build_setfunction, describe_setfunction),
    "polynomial": (build_polynomial, describe_polynomial),
}


def load(path: PathLike, kind: str) -> Any:
    """Read a descriptor file of the given kind and build the domain object."""
    if kind not in BUILDERS:
        raise DescriptorError(f"unknown descriptor kind {kind!r}", {"kinds": sorted(BUILDERS)})
    return BUILDERS[kind][0](read_json(path))


def dump(obj: Any, kind: str) -> Any:
    return BUILDERS[kind][1](obj)


def save_object(path: PathLike, obj: Any, kind: str):
    save(path, dump(obj, kind))
