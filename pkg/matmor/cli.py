"""
matmor - Command-Line Interface

Every subcommand reads descriptor files, runs one pipeline and prints a single
JSON report on stdout:

    {"command": [...], "inputs_digest": "<sha256>", "result": ...}

Exit codes: 0 on success, 1 on a domain error (the report is replaced by
{"error": {"type", "message", "witness"}}), 2 on a usage error.

Usage:
    python main.py bvector fixtures/fano-projection.json
    python main.py bvector fixtures/graph-hom.json --format tsv
    python main.py tutte multivariate matroid.json --q 1/2
    python main.py lorentzian poly.json
    python main.py lorentzian --flag flag.json --q 1/2 1
    python main.py ulc 0 0 27 79 111 75 0 0 0 0
    python main.py probe-ln setfn.json --grid 1/8 1/4 1/2 1
    python main.py dualize k7.json rotation.json --out k7-torus.json
    python main.py check quotient M.json N.json
    python main.py fixtures k7-torus --out fixtures
    python main.py sweep flag-lorentzian --instances 200 --seed 7

Global options (--seed, --timing, --debug, --cross-check, --config) go before
the subcommand.
"""

import argparse
import hashlib
import sys
import time
import traceback
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import config
from .errors import DescriptorError, MatmorError
from .fixtures import FIXTURE_NAMES, fixture_documents
from .lorentzian import is_lorentzian, is_ultra_log_concave, sampled_log_concavity
from .loaders import (build_family, build_flag, build_graph, build_matroid, build_morphism, build_polynomial,
                      build_rotation, build_setfunction, canonical_json, describe_graph, describe_morphism,
                      inputs_digest, read_json, save)
from .matroid import GraphicMatroid, dual
from .models import Report, Verdict
from .morphism import (MatroidMorphism, b_vector, check_delta_matroid, geometric_dual, is_morphism,
                       is_quotient)
from .graphs import euler_characteristic, trace_faces
from .polynomial import Polynomial
from .setfunction import is_mnat_concave, is_submodular, limit_extraction, mnat_consistency, probe_ln
from .sweeps import SWEEPS, summarize
from .tutte import (homogeneous_tutte, lasvergnas_tutte, morphism_tutte, multivariate_tutte,
                    tutte_polynomial)
from .utils import as_fraction, status

Result = Tuple[Any, List[str]]


class UsageError(Exception):
    pass


def rational(text: str):
    try:
        return as_fraction(text)
    except DescriptorError as e:
        raise argparse.ArgumentTypeError(e.message)


def _polynomial_result(h: Polynomial) -> Dict:
    return {"nvars": h.nvars, "terms": h.to_json()}


# Subcommands


def run_bvector(args) -> Result:
    f = build_morphism(read_json(args.morphism))
    bv = b_vector(f)
    if args.format == "tsv":
        return bv.to_frame().to_csv(sep="\t", index=False), [args.morphism]
    return {"n": bv.n, "b": bv.to_list()}, [args.morphism]


def run_tutte(args) -> Result:
    if args.kind in ("multivariate", "morphism") and not args.q:
        raise UsageError(f"tutte {args.kind} needs --q")
    if args.kind == "flag" and not args.q:
        raise UsageError("tutte flag needs one --q value per constituent")
    first = read_json(args.inputs[0])
    if args.kind == "multivariate":
        return _polynomial_result(multivariate_tutte(build_matroid(first), args.q[0])), args.inputs
    if args.kind == "usual":
        return _polynomial_result(tutte_polynomial(build_matroid(first))), args.inputs
    if args.kind == "lasvergnas":
        if len(args.inputs) != 2:
            raise UsageError("tutte lasvergnas needs two matroid files: M and its quotient N")
        M, N = (build_matroid(read_json(p)) for p in args.inputs)
        return _polynomial_result(lasvergnas_tutte(M, N)), args.inputs
    if args.kind == "flag":
        return _polynomial_result(homogeneous_tutte(build_flag(first), args.q)), args.inputs
    if args.p is None:
        raise UsageError("tutte morphism needs --p")
    f = build_morphism(first)
    return _polynomial_result(morphism_tutte(f, args.p, args.q[0])), args.inputs


def run_lorentzian(args) -> Result:
    if args.flag:
        if not args.q:
            raise UsageError("lorentzian --flag needs --q")
        h, files = homogeneous_tutte(build_flag(read_json(args.flag)), args.q), [args.flag]
    elif args.polynomial:
        h, files = build_polynomial(read_json(args.polynomial)), [args.polynomial]
    else:
        raise UsageError("lorentzian needs a polynomial file or --flag")
    result = {"lorentzian": is_lorentzian(h).model_dump()}
    if args.sampled:
        result["sampled_log_concavity"] = sampled_log_concavity(h, trials=args.samples).model_dump()
    return result, files


def run_ulc(args) -> Result:
    return is_ultra_log_concave(args.sequence).model_dump(), []


def run_mnat(args) -> Result:
    r = build_setfunction(read_json(args.setfunction))
    return {"mnat_concave": is_mnat_concave(r).model_dump(), "submodular": is_submodular(r).model_dump()}, \
        [args.setfunction]


def run_probe_ln(args) -> Result:
    r = build_setfunction(read_json(args.setfunction))
    if args.consistency:
        return mnat_consistency(r, args.grid).model_dump(), [args.setfunction]
    return probe_ln(r, args.grid).model_dump(), [args.setfunction]


def run_limit(args) -> Result:
    r = build_setfunction(read_json(args.setfunction))
    return _polynomial_result(limit_extraction(r, args.exponents)), [args.setfunction]


def run_dualize(args) -> Result:
    graph = build_graph(read_json(args.graph))
    rot = build_rotation(read_json(args.rotation))
    faces = trace_faces(graph, rot)
    dual_g, bijection = geometric_dual(graph, rot)
    result = {
        "faces": len(faces),
        "face_sizes": [len(face) for face in faces],
        "euler_characteristic": euler_characteristic(graph, faces),
        "dual": describe_graph(dual_g),
        "bijection": bijection,
    }
    if args.out:
        f = MatroidMorphism(dual(GraphicMatroid(graph)), GraphicMatroid(dual_g), bijection)
        save(args.out, describe_morphism(f))
        result["written"] = str(args.out)
    return result, [args.graph, args.rotation]


def run_check(args) -> Result:
    if args.kind == "morphism":
        f = build_morphism(read_json(args.inputs[0]))
        return is_morphism(f, exhaustive=args.exhaustive).model_dump(), args.inputs
    if args.kind == "quotient":
        if len(args.inputs) != 2:
            raise UsageError("check quotient needs two matroid files: M and N")
        M, N = (build_matroid(read_json(p)) for p in args.inputs)
        return is_quotient(M, N, exhaustive=args.exhaustive).model_dump(), args.inputs
    if args.kind == "flag":
        flag = build_flag(read_json(args.inputs[0]))
        return {**Verdict.yes().model_dump(), "length": len(flag), "ranks": [M.full_rank for M in flag]}, \
            args.inputs
    sets, n = build_family(read_json(args.inputs[0]))
    return check_delta_matroid(sets, n).model_dump(), args.inputs


def run_fixtures(args) -> Result:
    out = Path(args.out)
    written = {}
    for filename, doc in fixture_documents(args.name).items():
        save(out / filename, doc)
        written[filename] = hashlib.sha256(canonical_json(doc).encode()).hexdigest()
    return {"fixture": args.name, "directory": str(out), "files": written}, []


def run_sweep(args) -> Result:
    kwargs = {"seed": args.seed}
    if args.instances is not None:
        kwargs["trials" if args.name == "lemma46" else "instances"] = args.instances
    if args.exploratory:
        if args.name != "flag-lorentzian":
            raise UsageError("--exploratory only applies to the flag-lorentzian sweep")
        kwargs["exploratory"] = True
    frame = SWEEPS[args.name](**kwargs)
    return summarize(args.name, frame), []


COMMANDS: Dict[str, Callable] = {
    "bvector": run_bvector,
    "tutte": run_tutte,
    "lorentzian": run_lorentzian,
    "ulc": run_ulc,
    "mnat": run_mnat,
    "probe-ln": run_probe_ln,
    "limit": run_limit,
    "dualize": run_dualize,
    "check": run_check,
    "fixtures": run_fixtures,
    "sweep": run_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matmor", description="matmor - matroid morphisms, Tutte polynomials "
                                                                "and Lorentzian certificates")
    parser.add_argument("--seed", type=int, default=None, help="Seed for randomized routines")
    parser.add_argument("--timing", action="store_true", help="Include wall-clock seconds in the report")
    parser.add_argument("--debug", action="store_true", help="Status lines and tracebacks on stderr")
    parser.add_argument("--cross-check", action="store_true", help="Run the redundant consistency checks")
    parser.add_argument("--config", type=Path, default=None, help="YAML configuration file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bvector", help="Count the bases of a morphism by cardinality")
    p.add_argument("morphism")
    p.add_argument("--format", choices=["json", "tsv"], default="json")

    p = sub.add_parser("tutte", help="Tutte-type polynomials")
    p.add_argument("kind", choices=["multivariate", "usual", "lasvergnas", "flag", "morphism"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--q", type=rational, nargs="+", default=[])
    p.add_argument("--p", type=rational, default=None)

    p = sub.add_parser("lorentzian", help="Exact Lorentzian certification")
    p.add_argument("polynomial", nargs="?")
    p.add_argument("--flag")
    p.add_argument("--q", type=rational, nargs="+", default=[])
    p.add_argument("--sampled", action="store_true", help="Also run the sampled log-concavity probe")
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("ulc", help="Ultra-log-concavity of a sequence")
    p.add_argument("sequence", type=rational, nargs="+")

    p = sub.add_parser("mnat", help="M-natural-concavity and submodularity of a set function")
    p.add_argument("setfunction")

    p = sub.add_parser("probe-ln", help="Grid probe of L_n membership")
    p.add_argument("setfunction")
    p.add_argument("--grid", type=rational, nargs="+", default=None)
    p.add_argument("--consistency", action="store_true", help="Also check M-natural-concavity against the probe")

    p = sub.add_parser("limit", help="Lowest-order limit of Z_{p,r} under w_i -> p^e_i w_i")
    p.add_argument("setfunction")
    p.add_argument("--exponents", type=int, nargs="+", required=True)

    p = sub.add_parser("dualize", help="Geometric dual of an embedded graph")
    p.add_argument("graph")
    p.add_argument("rotation")
    p.add_argument("--out", type=Path, default=None, help="Write the dual morphism descriptor here")

    p = sub.add_parser("check", help="Morphism, quotient, flag and delta-matroid checks")
    p.add_argument("kind", choices=["morphism", "quotient", "flag", "delta"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--exhaustive", action="store_true", help="Scan all nested pairs")

    p = sub.add_parser("fixtures", help="Write the bundled worked examples")
    p.add_argument("name", choices=list(FIXTURE_NAMES))
    p.add_argument("--out", default="fixtures")

    p = sub.add_parser("sweep", help="Randomized property sweeps")
    p.add_argument("name", choices=list(SWEEPS))
    p.add_argument("--instances", type=int, default=None)
    p.add_argument("--exploratory", action="store_true", help="Add non-asserted q > 1 rows")
    return parser


def _digest(files: Sequence[str], argv: Sequence[str]) -> str:
    if files:
        return inputs_digest(files)
    return hashlib.sha256(" ".join(argv).encode()).hexdigest()


def _apply_overrides(args) -> Dict[str, Any]:
    """Point the global settings at the CLI options; returns what to restore."""
    saved = {k: getattr(config.settings, k) for k in ("debug", "cross_check", "seed")}
    if args.config is not None:
        loaded = config.Config.load(args.config)
        for k in ("max_n", "debug", "cross_check", "seed", "enumeration", "probe"):
            saved.setdefault(k, getattr(config.settings, k))
            setattr(config.settings, k, getattr(loaded, k))
    if args.debug:
        config.settings.debug = True
    if args.cross_check:
        config.settings.cross_check = True
    if args.seed is None:
        args.seed = config.settings.seed
    return saved


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    saved = _apply_overrides(args)
    try:
        started = time.perf_counter()
        status("cli", f"running {args.command}")
        result, files = COMMANDS[args.command](args)
        elapsed = time.perf_counter() - started
        if isinstance(result, str):
            sys.stdout.write(result)
            return 0
        report = Report(command=argv, inputs_digest=_digest(files, argv), result=result,
                        timing=round(elapsed, 6) if args.timing else None)
        payload = report.model_dump()
        if payload["timing"] is None:
            del payload["timing"]
        sys.stdout.write(canonical_json(payload))
        return 0
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"matmor: error: {e}", file=sys.stderr)
        return 2
    except MatmorError as e:
        if config.settings.debug:
            traceback.print_exc()
        sys.stdout.write(canonical_json({"error": e.to_payload()}))
        return 1
    finally:
        for k, v in saved.items():
            setattr(config.settings, k, v)
