"""
Command-line tool: solve, gen, prox-table, the benchmarks and gnsp-check.
"""

from pyErfSparse.cli.commands import build_parser, main
