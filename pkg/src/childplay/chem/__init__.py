"""Restricted cheminformatics for the molecule-guessing task."""

from .depict import AsciiDepiction, LayoutError, new_depicted_molecule, render_ascii
from .fingerprint import path_fingerprint, tanimoto
from .molecule import Molecule, audit_molecule, make_molecule, sample_molecule
from .scoring import (
    GtsBenchmarkResult,
    GtsScore,
    evaluate_prediction,
    gts_accuracy,
    levenshtein,
    run_gts_benchmark,
    strip_answer,
    write_gts_csv,
)
from .smiles import SmilesError, canonical_ranks, canonical_smiles, parse_smiles

__all__ = [
    "AsciiDepiction",
    "GtsBenchmarkResult",
    "GtsScore",
    "LayoutError",
    "Molecule",
    "SmilesError",
    "audit_molecule",
    "canonical_ranks",
    "canonical_smiles",
    "evaluate_prediction",
    "gts_accuracy",
    "levenshtein",
    "make_molecule",
    "new_depicted_molecule",
    "parse_smiles",
    "path_fingerprint",
    "render_ascii",
    "run_gts_benchmark",
    "sample_molecule",
    "strip_answer",
    "tanimoto",
    "write_gts_csv",
]
