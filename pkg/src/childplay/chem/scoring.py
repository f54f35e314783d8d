"""Scoring for the molecule-guessing task: exact match, fingerprint
similarity, string distance, and the batch benchmark runner."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Optional

from .fingerprint import path_fingerprint, tanimoto
from .molecule import Molecule
from .smiles import SmilesError, canonical_smiles, parse_smiles

INVALID_SIMILARITY = -1.0

_FENCE_RE = re.compile(r"^```[a-zA-Z]*\s*\n(.*?)\n?```\s*$", re.DOTALL)


@dataclass(frozen=True)
class GtsScore:
    correct: bool
    valid: bool
    chemical_similarity: float
    string_distance: int

    def to_dict(self) -> dict:
        return {
            "correct": self.correct,
            "valid": self.valid,
            "chemical_similarity": self.chemical_similarity,
            "string_distance": self.string_distance,
        }


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,         # deletion
                    current[j - 1] + 1,      # insertion
                    previous[j - 1] + (ca != cb),  # substitution
                )
            )
        previous = current
    return previous[-1]


def strip_answer(raw: str) -> str:
    """Trim whitespace and markdown code fences; keep the first non-empty line."""
    text = raw.strip()
    fence = _FENCE_RE.match(text)
    if fence:
        text = fence.group(1).strip()
    text = text.strip("`").strip()
    for line in text.splitlines():
        if line.strip():
            return line.strip()
    return ""


def evaluate_prediction(puzzle: Molecule, raw: str) -> GtsScore:
    """Score a predicted SMILES against the puzzle molecule.

    Invalid predictions score similarity -1; valid ones are compared by
    canonical equality and fingerprint Tanimoto.  String distance is always
    measured against the puzzle's canonical SMILES.
    """
    answer = strip_answer(raw)
    target = canonical_smiles(puzzle)
    distance = levenshtein(answer, target)
    try:
        predicted = parse_smiles(answer)
        predicted_canonical = canonical_smiles(predicted)
    except SmilesError:
        return GtsScore(
            correct=False,
            valid=False,
            chemical_similarity=INVALID_SIMILARITY,
            string_distance=distance,
        )
    correct = predicted_canonical == target
    similarity = tanimoto(path_fingerprint(predicted), path_fingerprint(puzzle))
    return GtsScore(
        correct=correct,
        valid=True,
        chemical_similarity=similarity,
        string_distance=distance,
    )


def gts_accuracy(tally) -> Optional[float]:
    """100 * correct / (correct + incorrect); invalid answers are excluded
    from the denominator.  None when the denominator is zero."""
    correct = tally["correct"] if isinstance(tally, dict) else tally.correct
    incorrect = tally["incorrect"] if isinstance(tally, dict) else tally.incorrect
    denominator = correct + incorrect
    if denominator == 0:
        return None
    return 100.0 * correct / denominator


@dataclass
class GtsBenchmarkResult:
    correct: int = 0
    incorrect: int = 0
    invalid: int = 0
    similarities: list = field(default_factory=list)
    distances: list = field(default_factory=list)

    @property
    def avg_similarity(self) -> float:
        """Average over everything, invalids counted at -1; can go negative."""
        return sum(self.similarities) / len(self.similarities) if self.similarities else 0.0

    @property
    def avg_string_distance(self) -> float:
        return sum(self.distances) / len(self.distances) if self.distances else 0.0

    @property
    def accuracy(self) -> Optional[float]:
        return gts_accuracy(self)


def run_gts_benchmark(
    player,
    count: int,
    rng: random.Random,
    options: dict | None = None,
) -> GtsBenchmarkResult:
    """Run ``count`` puzzles through ``player`` (a callable prompt -> reply).

    Each prompt is the instruction text plus the ASCII depiction.
    """
    from ..prompts import load_template
    from .depict import new_depicted_molecule

    instructions = load_template("gts").template
    result = GtsBenchmarkResult()
    for _ in range(count):
        molecule, depiction = new_depicted_molecule(rng, options)
        reply = player(instructions + "\n" + depiction.text)
        score = evaluate_prediction(molecule, reply)
        if not score.valid:
            result.invalid += 1
        elif score.correct:
            result.correct += 1
        else:
            result.incorrect += 1
        result.similarities.append(score.chemical_similarity)
        result.distances.append(score.string_distance)
    return result


def write_gts_csv(
    result: GtsBenchmarkResult,
    path,
    model: str = "",
    temperature: Optional[float] = None,
) -> None:
    import csv

    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            [
                "model",
                "temperature",
                "correct",
                "incorrect",
                "invalid",
                "avg_similarity",
                "avg_string_distance",
                "accuracy",
            ]
        )
        accuracy = result.accuracy
        writer.writerow(
            [
                model,
                temperature,
                result.correct,
                result.incorrect,
                result.invalid,
                f"{result.avg_similarity:.4f}",
                f"{result.avg_string_distance:.4f}",
                "" if accuracy is None else f"{accuracy:.2f}",
            ]
        )
