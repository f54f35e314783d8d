"""Connect-Four rules engine: 7 columns x 7 rows, discs fall to the bottom."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..core import (
    GameContract,
    GameStatus,
    MoveOutcome,
    PlayerId,
    Termination,
    check_options,
)
from ..prompts import load_template

EMPTY = "."
MARKS = {PlayerId.P1: "X", PlayerId.P2: "O"}
ROWS = 7
COLS = 7


@dataclass
class C4Board:
    cells: list = field(default_factory=lambda: [[EMPTY] * COLS for _ in range(ROWS)])
    last_move: Optional[tuple] = None  # (row, col)

    def copy(self) -> "C4Board":
        return C4Board([row[:] for row in self.cells], self.last_move)


def c4_drop(board: C4Board, player: PlayerId, col: int) -> MoveOutcome:
    """Drop a disc into ``col``; lands on the lowest empty row.

    Out-of-range columns and full columns are WRONG_MOVE (no mutation).
    """
    if not isinstance(col, int) or not 0 <= col < COLS:
        return MoveOutcome.WRONG_MOVE
    for row in range(ROWS - 1, -1, -1):
        if board.cells[row][col] == EMPTY:
            board.cells[row][col] = MARKS[player]
            board.last_move = (row, col)
            return MoveOutcome.ACCEPTED
    return MoveOutcome.WRONG_MOVE


def c4_check_win(board: C4Board) -> bool:
    """True iff the last move lies on a line of >= 4 identical symbols.

    Checks horizontally, vertically, and both diagonals through last_move.
    """
    if board.last_move is None:
        raise ValueError("c4_check_win requires last_move to be set")
    row, col = board.last_move
    mark = board.cells[row][col]
    for dr, dc in ((0, 1), (1, 0), (1, 1), (1, -1)):
        count = 1
        for sign in (1, -1):
            r, c = row + sign * dr, col + sign * dc
            while 0 <= r < ROWS and 0 <= c < COLS and board.cells[r][c] == mark:
                count += 1
                r += sign * dr
                c += sign * dc
        if count >= 4:
            return True
    return False


def c4_check_tie(board: C4Board) -> bool:
    """True iff the top row is completely filled and the last move did not win."""
    if any(cell == EMPTY for cell in board.cells[0]):
        return False
    return not c4_check_win(board)


def c4_landing_row(board: C4Board, col: int) -> Optional[int]:
    """Row where a disc dropped in ``col`` would land, or None if full."""
    if not 0 <= col < COLS:
        return None
    for row in range(ROWS - 1, -1, -1):
        if board.cells[row][col] == EMPTY:
            return row
    return None


class ConnectFour(GameContract):
    kind = "connectfour"

    def __init__(self, options: dict, seed: int):
        check_options(options, {})
        self.board = C4Board()
        self._status = GameStatus()
        self.reset()

    def reset(self) -> None:
        self.board = C4Board()
        self._status = GameStatus()

    def status(self) -> GameStatus:
        return self._status

    def intro_prompt(self) -> str:
        return load_template("connectfour").template

    def text_state(self, viewer: PlayerId) -> str:
        lines = [" ".join(str(c) for c in range(COLS))]
        for row in self.board.cells:
            lines.append(" ".join(row))
        return "\n".join(lines) + "\n"

    def legal_moves(self, player: PlayerId) -> list:
        return [c for c in range(COLS) if self.board.cells[0][c] == EMPTY]

    def format_move(self, move) -> str:
        return str(move)

    def apply(self, player: PlayerId, move) -> MoveOutcome:
        outcome = c4_drop(self.board, player, move)
        if outcome is MoveOutcome.WRONG_MOVE:
            return outcome
        if c4_check_win(self.board):
            self._status = GameStatus(True, player, Termination.WIN)
            return MoveOutcome.WIN
        if c4_check_tie(self.board):
            self._status = GameStatus(True, None, Termination.TIE)
            return MoveOutcome.TIE
        return MoveOutcome.ACCEPTED
