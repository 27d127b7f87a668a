import sys

"""
matmor - Main Entry Point

This script serves as the command-line entry point for matmor. All subcommands
live in `matmor.cli`; see `python main.py --help` or the README for usage.

Usage:
    python main.py bvector fixtures/fano-projection.json
    python main.py lorentzian --flag flag.json --q 1/2 1
    python main.py sweep flag-lorentzian --instances 200

Dependencies:
- numpy, pandas: rank tables and tabular output.
- sympy: exact characteristic polynomials.
- networkx: graph connectivity for embeddings.
- pydantic, pydantic-settings, pyyaml, python-dotenv: descriptors and configuration.
"""
from matmor.cli import main

if __name__ == "__main__":
    sys.exit(main())
