"""Tic-Tac-Toe rules engine: 3x3 grid, X moves first."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import (
    GameContract,
    GameStatus,
    MoveOutcome,
    PlayerId,
    Termination,
    check_options,
)
from ..prompts import load_template

BLANK = " "
MARKS = {PlayerId.P1: "X", PlayerId.P2: "O"}


@dataclass
class TttBoard:
    cells: list = field(default_factory=lambda: [[BLANK] * 3 for _ in range(3)])

    def copy(self) -> "TttBoard":
        return TttBoard([row[:] for row in self.cells])


def ttt_check_win(board: TttBoard, player: PlayerId) -> bool:
    """True iff any row, column, or diagonal holds three of player's marks."""
    mark = MARKS[player]
    c = board.cells
    for i in range(3):
        if all(c[i][j] == mark for j in range(3)):
            return True
        if all(c[j][i] == mark for j in range(3)):
            return True
    if all(c[i][i] == mark for i in range(3)):
        return True
    return all(c[i][2 - i] == mark for i in range(3))


def ttt_check_tie(board: TttBoard) -> bool:
    """True iff all 9 cells are filled and neither player wins."""
    if any(cell == BLANK for row in board.cells for cell in row):
        return False
    return not (ttt_check_win(board, PlayerId.P1) or ttt_check_win(board, PlayerId.P2))


class TicTacToe(GameContract):
    kind = "tictactoe"

    def __init__(self, options: dict, seed: int):
        check_options(options, {})
        self.board = TttBoard()
        self._status = GameStatus()
        self.reset()

    def reset(self) -> None:
        self.board = TttBoard()
        self._status = GameStatus()

    def status(self) -> GameStatus:
        return self._status

    def intro_prompt(self) -> str:
        return load_template("tictactoe").template

    def text_state(self, viewer: PlayerId) -> str:
        lines = ["  0 1 2"]
        for r in range(3):
            lines.append((f"{r} " + "|".join(self.board.cells[r])).rstrip())
            if r < 2:
                lines.append(" -----")
        return "\n".join(lines) + "\n"

    def legal_moves(self, player: PlayerId) -> list:
        return [
            (r, c)
            for r in range(3)
            for c in range(3)
            if self.board.cells[r][c] == BLANK
        ]

    def format_move(self, move) -> str:
        return f"{move[0]} {move[1]}"

    def apply(self, player: PlayerId, move) -> MoveOutcome:
        r, c = move
        if not (0 <= r < 3 and 0 <= c < 3) or self.board.cells[r][c] != BLANK:
            return MoveOutcome.WRONG_MOVE
        self.board.cells[r][c] = MARKS[player]
        if ttt_check_win(self.board, player):
            self._status = GameStatus(True, player, Termination.WIN)
            return MoveOutcome.WIN
        if ttt_check_tie(self.board):
            self._status = GameStatus(True, None, Termination.TIE)
            return MoveOutcome.TIE
        return MoveOutcome.ACCEPTED
