"""matroidlab: exact workbench for ternary frame matroids.

Modules:
    gf         dense exact linear algebra over GF(3) and GF(5)
    matroid    linear matroids with minor, isomorphism and embedding search
    catalog    named matrices and matroids used throughout the verification suites
    templates  frame templates, Y-template normal forms and the classifier
    suites     batch verification checks behind the command line interface
"""

from .catalog import named, universal_matrix
from .gf import GFMatrix
from .matroid import LinearMatroid, find_embedding, find_isomorphism, has_minor
from .suites import run_suite
from .templates import classify_Y_template

__all__ = [
    "GFMatrix",
    "LinearMatroid",
    "classify_Y_template",
    "find_embedding",
    "find_isomorphism",
    "has_minor",
    "named",
    "run_suite",
    "universal_matrix",
]
__version__ = "0.1.0"
