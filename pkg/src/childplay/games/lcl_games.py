"""Single-shot brick-language games for the harness.

Validity: the player sees one construct and must answer valid/invalid.
Generation: the player must emit a valid construct of a given size.
Both end after one answer; an unparsable reply forfeits per the uniform
wrong-move rule, a parsable wrong answer simply loses.
"""

from __future__ import annotations

import random

from ..core import (
    GameContract,
    GameStatus,
    MoveOutcome,
    PlayerId,
    Termination,
    check_options,
)
from ..lcl import (
    LclConstruct,
    generate_invalid_construct,
    generate_valid_construct,
    is_valid_construct,
)
from ..prompts import load_template, substitute


class LclValidity(GameContract):
    kind = "lcl_validity"

    def __init__(self, options: dict, seed: int):
        check_options(
            options,
            {"n_pieces": lambda v: isinstance(v, int) and v >= 2},
        )
        self.n_pieces = options.get("n_pieces", 0)  # 0: random 2..6
        self.seed = seed
        self.construct: LclConstruct | None = None
        self.expected_valid = True
        self._status = GameStatus()
        self.reset()

    def reset(self) -> None:
        rng = random.Random(self.seed)
        n = self.n_pieces or rng.randint(2, 6)
        if rng.random() < 0.5:
            self.construct = generate_valid_construct(n, rng)
            self.expected_valid = True
        else:
            self.construct = generate_invalid_construct(n, rng)
            self.expected_valid = False
        self._status = GameStatus()

    def status(self) -> GameStatus:
        return self._status

    def intro_prompt(self) -> str:
        return substitute(
            load_template("lcl_validity"), pieces=self.construct.wire_format()
        )

    def text_state(self, viewer: PlayerId) -> str:
        return self.construct.wire_format() + "\n"

    def legal_moves(self, player: PlayerId) -> list:
        return ["valid", "invalid"]

    def format_move(self, move) -> str:
        return str(move)

    def apply(self, player: PlayerId, move) -> MoveOutcome:
        if move not in (True, False):
            return MoveOutcome.WRONG_MOVE
        if move == self.expected_valid:
            self._status = GameStatus(True, player, Termination.WIN)
            return MoveOutcome.WIN
        self._status = GameStatus(True, player.opponent, Termination.WIN)
        return MoveOutcome.ACCEPTED


class LclGeneration(GameContract):
    kind = "lcl_generation"

    def __init__(self, options: dict, seed: int):
        check_options(
            options,
            {"n_pieces": lambda v: isinstance(v, int) and v >= 1},
        )
        self.n_pieces = options.get("n_pieces", 3)
        self.seed = seed
        self._status = GameStatus()

    def reset(self) -> None:
        self._status = GameStatus()

    def status(self) -> GameStatus:
        return self._status

    def intro_prompt(self) -> str:
        return substitute(load_template("lcl_generation"), n_pieces=self.n_pieces)

    def text_state(self, viewer: PlayerId) -> str:
        return f"Produce a valid structure using {self.n_pieces} Lego pieces.\n"

    def legal_moves(self, player: PlayerId) -> list:
        return []  # free-form: moves are construct descriptions

    def format_move(self, move) -> str:
        return move.wire_format() if isinstance(move, LclConstruct) else str(move)

    def apply(self, player: PlayerId, move) -> MoveOutcome:
        if not isinstance(move, LclConstruct):
            return MoveOutcome.WRONG_MOVE
        if is_valid_construct(move).valid:
            self._status = GameStatus(True, player, Termination.WIN)
            return MoveOutcome.WIN
        self._status = GameStatus(True, player.opponent, Termination.WIN)
        return MoveOutcome.ACCEPTED
