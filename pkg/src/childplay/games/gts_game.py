"""Single-shot molecule-guessing game for the harness.

The player sees the ASCII depiction and answers with a SMILES string.
Correct guesses win; valid but wrong guesses lose; an invalid SMILES
forfeits under the uniform wrong-move rule, so the wrong-move tally
mirrors the benchmark's invalid column.
"""

from __future__ import annotations

import random

from ..chem import (
    SmilesError,
    canonical_smiles,
    new_depicted_molecule,
    parse_smiles,
)
from ..core import (
    GameContract,
    GameStatus,
    MoveOutcome,
    PlayerId,
    Termination,
    check_options,
)
from ..prompts import load_template


class GuessTheSmiles(GameContract):
    kind = "gts"

    def __init__(self, options: dict, seed: int):
        check_options(
            options,
            {
                "allow_sulfur": lambda v: isinstance(v, bool),
                "min_atoms": lambda v: isinstance(v, int) and v >= 3,
                "max_atoms": lambda v: isinstance(v, int) and v <= 12,
                "ring_prob": lambda v: 0.0 <= v <= 1.0,
                "double_bond_prob": lambda v: 0.0 <= v <= 1.0,
            },
        )
        self.options = dict(options)
        self.seed = seed
        self.molecule = None
        self.depiction = None
        self._status = GameStatus()
        self.reset()

    def reset(self) -> None:
        rng = random.Random(self.seed)
        self.molecule, self.depiction = new_depicted_molecule(rng, self.options)
        self._status = GameStatus()

    def status(self) -> GameStatus:
        return self._status

    def intro_prompt(self) -> str:
        return load_template("gts").template

    def text_state(self, viewer: PlayerId) -> str:
        return self.depiction.text

    def legal_moves(self, player: PlayerId) -> list:
        return []  # free-form: moves are SMILES strings

    def format_move(self, move) -> str:
        return str(move)

    def apply(self, player: PlayerId, move) -> MoveOutcome:
        try:
            predicted = canonical_smiles(parse_smiles(move))
        except (SmilesError, ValueError):
            return MoveOutcome.WRONG_MOVE
        if predicted == canonical_smiles(self.molecule):
            self._status = GameStatus(True, player, Termination.WIN)
            return MoveOutcome.WIN
        self._status = GameStatus(True, player.opponent, Termination.WIN)
        return MoveOutcome.ACCEPTED
