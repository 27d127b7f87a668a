"""Shared fixtures: repository paths, the CLI runner and the weak-map example pair."""

import json
from pathlib import Path

import pytest

from matmor.cli import main
from matmor.matroid import from_bases
from matmor.setfunction import SetFunction

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def fixtures_dir() -> Path:
    return REPO_ROOT / "fixtures"


@pytest.fixture
def schemas_dir() -> Path:
    return REPO_ROOT / "schemas"


@pytest.fixture
def run_cli(capsys):
    """Run `matmor.cli.main` and return (exit code, parsed stdout)."""

    def run(*argv):
        code = main([str(a) for a in argv])
        out = capsys.readouterr().out
        try:
            return code, json.loads(out)
        except json.JSONDecodeError:
            return code, out

    return run


@pytest.fixture
def weak_map_pair():
    """M with bases {1,2},{1,3} and N with bases {1},{2}: a weak map that is not a quotient."""
    return from_bases(3, [[1, 2], [1, 3]]), from_bases(3, [[1], [2]])


@pytest.fixture
def rank_sum(weak_map_pair) -> SetFunction:
    M, N = weak_map_pair
    return SetFunction.rank_combination([M, N], [1, 1])


@pytest.fixture
def write_json(tmp_path):
    """Write a document under tmp_path and return its path."""

    def write(name: str, doc) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return write
