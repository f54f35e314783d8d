"""Battleship rules engine.

Ships are placed at random without overlapping or touching another ship,
including diagonally adjacent cells.  Each player fires at the opponent's
grid on alternating turns; hits are marked 'X' and misses 'O' on both the
shooter's guess board and the target's ship board.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..core import (
    ConfigError,
    GameContract,
    GameStatus,
    MoveOutcome,
    PlayerId,
    Termination,
    check_options,
)
from ..prompts import load_template, substitute

SEA = "~"
SHIP = "S"
HIT = "X"
MISS = "O"

BASE_FLEET = (5, 4, 3, 3, 2)
PLACEMENT_ATTEMPTS = 10_000


class PlacementError(RuntimeError):
    """A ship could not be placed after the attempt budget; reduce the fleet."""


def default_fleet(size: int) -> list[int]:
    """Base lengths scaled by size/10 (round half-up), floor 2, unique lengths."""
    scaled = [max(2, int(length * size / 10 + 0.5)) for length in BASE_FLEET]
    fleet: list[int] = []
    for length in scaled:
        if length not in fleet:
            fleet.append(length)
    return fleet


def is_space_free(board: list, row: int, col: int, length: int, horizontal: bool) -> bool:
    """Can a ship of ``length`` sit at (row, col) without touching another ship?

    Checks the full 8-neighborhood of every cell the ship would occupy.
    """
    size = len(board)
    cells = [
        (row, col + k) if horizontal else (row + k, col) for k in range(length)
    ]
    for r, c in cells:
        if not (0 <= r < size and 0 <= c < size):
            return False
    for r, c in cells:
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                nr, nc = r + dr, c + dc
                if 0 <= nr < size and 0 <= nc < size and board[nr][nc] == SHIP:
                    return False
    return True


def place_ships(
    size: int,
    fleet: list[int],
    rng: random.Random,
    horizontal_only: bool = False,
) -> tuple[list, list]:
    """Place every ship via rejection sampling over (orientation, origin).

    Each attempt draws orientation and origin uniformly and keeps the first
    legal placement, so placements are uniform over the legal set.

    Returns (ship_board, fleets) where fleets is a list of cell lists, one
    per ship in fleet order.
    """
    board = [[SEA] * size for _ in range(size)]
    fleets: list[list[tuple]] = []
    for length in fleet:
        for _ in range(PLACEMENT_ATTEMPTS):
            horizontal = True if horizontal_only else rng.random() < 0.5
            row = rng.randrange(size)
            col = rng.randrange(size)
            if is_space_free(board, row, col, length, horizontal):
                cells = [
                    (row, col + k) if horizontal else (row + k, col)
                    for k in range(length)
                ]
                for r, c in cells:
                    board[r][c] = SHIP
                fleets.append(cells)
                break
        else:
            raise PlacementError(
                f"could not place ship of length {length} on a {size}x{size} board"
            )
    return board, fleets


@dataclass
class BattleshipState:
    board_size: int
    ship_boards: dict = field(default_factory=dict)   # PlayerId -> grid with S/~/X/O
    guess_boards: dict = field(default_factory=dict)  # PlayerId -> grid with ~/X/O
    fleets: dict = field(default_factory=dict)        # PlayerId -> list of cell lists
    shots: int = 0


def battleship_guess(
    state: BattleshipState, player: PlayerId, row: int, col: int
) -> MoveOutcome:
    """Fire at the opponent's grid.

    In-bounds, unexplored cell -> hit/miss marked on the shooter's guess
    board and the opponent's ship board; win when every opponent ship cell
    is hit.  Out-of-bounds or repeated cells are WRONG_MOVE.
    """
    size = state.board_size
    if not (0 <= row < size and 0 <= col < size):
        return MoveOutcome.WRONG_MOVE
    guesses = state.guess_boards[player]
    if guesses[row][col] != SEA:
        return MoveOutcome.WRONG_MOVE
    opponent = player.opponent
    ships = state.ship_boards[opponent]
    state.shots += 1
    if ships[row][col] == SHIP:
        guesses[row][col] = HIT
        ships[row][col] = HIT
        if all(
            ships[r][c] == HIT for ship in state.fleets[opponent] for r, c in ship
        ):
            return MoveOutcome.WIN
        return MoveOutcome.ACCEPTED
    guesses[row][col] = MISS
    if ships[row][col] == SEA:
        ships[row][col] = MISS
    return MoveOutcome.ACCEPTED


def battleship_text_state(state: BattleshipState, viewer: PlayerId) -> str:
    """Two labeled grids: the viewer's own ships and the viewer's guesses.

    Opponent ship positions never appear.
    """
    def grid_lines(grid):
        size = state.board_size
        lines = ["  " + " ".join(str(c) for c in range(size))]
        for r in range(size):
            lines.append(f"{r} " + " ".join(grid[r]))
        return lines

    lines = ["Your ships:"]
    lines += grid_lines(state.ship_boards[viewer])
    lines.append("Your guesses:")
    lines += grid_lines(state.guess_boards[viewer])
    return "\n".join(lines) + "\n"


class Battleship(GameContract):
    kind = "battleship"

    def __init__(self, options: dict, seed: int):
        check_options(
            options,
            {
                "board_size": lambda v: isinstance(v, int),
                "fleet": lambda v: isinstance(v, (list, tuple)) and len(v) > 0,
                "horizontal_only": lambda v: isinstance(v, bool),
                "turn_limit": lambda v: isinstance(v, int) and v > 0,
            },
        )
        size = options.get("board_size", 5)
        if size < 3:
            raise ConfigError(f"invalid value for option 'board_size': {size}")
        self.board_size = size
        self.fleet = [int(v) for v in options.get("fleet", default_fleet(size))]
        if any(length > size for length in self.fleet):
            raise ConfigError(f"invalid value for option 'fleet': {self.fleet}")
        self.horizontal_only = options.get("horizontal_only", False)
        self.turn_limit = options.get("turn_limit", 2 * size * size)
        self.seed = seed
        self.state = BattleshipState(size)
        self._status = GameStatus()
        self.reset()

    def reset(self) -> None:
        rng = random.Random(self.seed)
        state = BattleshipState(self.board_size)
        for player in (PlayerId.P1, PlayerId.P2):
            board, fleets = place_ships(
                self.board_size, self.fleet, rng, self.horizontal_only
            )
            state.ship_boards[player] = board
            state.guess_boards[player] = [
                [SEA] * self.board_size for _ in range(self.board_size)
            ]
            state.fleets[player] = fleets
        self.state = state
        self._status = GameStatus()

    def status(self) -> GameStatus:
        return self._status

    def intro_prompt(self) -> str:
        return substitute(
            load_template("battleship"), board_size_minus_1=self.board_size - 1
        )

    def text_state(self, viewer: PlayerId) -> str:
        return battleship_text_state(self.state, viewer)

    def legal_moves(self, player: PlayerId) -> list:
        guesses = self.state.guess_boards[player]
        return [
            (r, c)
            for r in range(self.board_size)
            for c in range(self.board_size)
            if guesses[r][c] == SEA
        ]

    def format_move(self, move) -> str:
        return f"{move[0]} {move[1]}"

    def apply(self, player: PlayerId, move) -> MoveOutcome:
        row, col = move
        outcome = battleship_guess(self.state, player, row, col)
        if outcome is MoveOutcome.WIN:
            self._status = GameStatus(True, player, Termination.WIN)
        elif outcome is MoveOutcome.ACCEPTED and self.state.shots >= self.turn_limit:
            self._status = GameStatus(True, None, Termination.TURN_LIMIT)
        return outcome
