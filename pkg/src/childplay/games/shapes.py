"""Shape recognition game: a figure hidden as 1s in a matrix of 0s.

One of square / triangle / cross is drawn at a random size and position;
circle is always listed among the four answer options but never drawn.
The game is single-shot: one guess, then it is over.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from ..core import (
    ConfigError,
    GameContract,
    GameStatus,
    MoveOutcome,
    PlayerId,
    Termination,
    check_options,
)
from ..prompts import load_template

EMPTY_CHARACTER = "0"
FULL_CHARACTER = "1"

OPTION_LABELS = ("circle", "square", "triangle", "cross")
DRAWN_SHAPES = ("square", "triangle", "cross")
# every reading of "square" scores as correct
LABEL_SYNONYMS = {"rectangle": "square"}


def create_board(height: int, width: int) -> list:
    """Empty height x width board of '0' cells; both dimensions must be >= 5."""
    if height < 5 or width < 5:
        raise ValueError(f"board dimensions too small: {height}x{width} (minimum 5x5)")
    return [[EMPTY_CHARACTER] * width for _ in range(height)]


def _set(grid: list, row: int, col: int) -> None:
    if not (0 <= row < len(grid) and 0 <= col < len(grid[0])):
        raise ValueError(f"cell ({row}, {col}) out of bounds")
    grid[row][col] = FULL_CHARACTER


def draw_rectangle(grid: list, top: int, left: int, h: int, w: int) -> list:
    """Fill the h x w rectangle with top-left corner (top, left); h == w is a square."""
    if h < 1 or w < 1:
        raise ValueError("rectangle dimensions must be positive")
    for r in range(top, top + h):
        for c in range(left, left + w):
            _set(grid, r, c)
    return grid


def draw_circle(grid: list, center_row: int, center_col: int, r: int) -> list:
    """Midpoint circle algorithm: the 8-way symmetric outline of radius ``r``."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    if r == 0:
        _set(grid, center_row, center_col)
        return grid
    x, y = 0, r
    d = 1 - r
    while x <= y:
        for dx, dy in (
            (x, y), (y, x), (-x, y), (-y, x),
            (x, -y), (y, -x), (-x, -y), (-y, -x),
        ):
            _set(grid, center_row + dy, center_col + dx)
        if d < 0:
            d += 2 * x + 3
        else:
            d += 2 * (x - y) + 5
            y -= 1
        x += 1
    return grid


def draw_triangle(grid: list, apex_row: int, apex_col: int, height: int) -> list:
    """Filled isoceles triangle: row apex_row+k holds 2k+1 cells centered on apex_col."""
    if height < 1:
        raise ValueError("triangle height must be positive")
    for k in range(height):
        for c in range(apex_col - k, apex_col + k + 1):
            _set(grid, apex_row + k, c)
    return grid


def draw_cross(grid: list, center_row: int, center_col: int, arm: int) -> list:
    """Horizontal and vertical segments of length 2*arm+1 through the center."""
    if arm < 0:
        raise ValueError("arm length must be non-negative")
    for d in range(-arm, arm + 1):
        _set(grid, center_row, center_col + d)
    for d in range(-arm, arm + 1):
        if d != 0:
            _set(grid, center_row + d, center_col)
    return grid


@dataclass
class ShapeBoard:
    grid: list
    shape: str
    answer_options: list


def _draw_random_shape(grid: list, shape: str, rng: random.Random) -> None:
    height, width = len(grid), len(grid[0])
    if shape == "square":
        side = rng.randint(3, min(7, height, width))
        top = rng.randint(0, height - side)
        left = rng.randint(0, width - side)
        draw_rectangle(grid, top, left, side, side)
    elif shape == "triangle":
        h = rng.randint(3, min(7, height, (width + 1) // 2))
        apex_row = rng.randint(0, height - h)
        apex_col = rng.randint(h - 1, width - h)
        draw_triangle(grid, apex_row, apex_col, h)
    elif shape == "cross":
        arm = rng.randint(2, min(6, (height - 1) // 2, (width - 1) // 2))
        row = rng.randint(arm, height - 1 - arm)
        col = rng.randint(arm, width - 1 - arm)
        draw_cross(grid, row, col, arm)
    else:
        raise ValueError(f"not a drawable shape: {shape!r}")


def render_board(board: ShapeBoard) -> str:
    """Rows of 0/1 characters followed by the shuffled answer options."""
    lines = ["".join(row) for row in board.grid]
    letters = ("A", "B", "C", "D")
    lines.append(
        " ".join(f"{letter}) {label}" for letter, label in zip(letters, board.answer_options))
    )
    return "\n".join(lines) + "\n"


def play_shape_round(rng: random.Random, options: dict | None = None) -> tuple:
    """One round: pick a drawable shape uniformly, place it, shuffle options.

    Returns (ShapeBoard, prompt_text) where prompt_text is the rendered
    board plus the option list.
    """
    options = options or {}
    height = options.get("height", 15)
    width = options.get("width", 15)
    grid = create_board(height, width)
    shape = rng.choice(DRAWN_SHAPES)
    _draw_random_shape(grid, shape, rng)
    labels = list(OPTION_LABELS)
    rng.shuffle(labels)
    board = ShapeBoard(grid=grid, shape=shape, answer_options=labels)
    return board, render_board(board)


def extract_shape_answer(raw: str):
    """The single option label named in ``raw``, or None if zero or several."""
    words = re.findall(r"[a-zA-Z]+", raw.lower())
    found = []
    for word in words:
        label = LABEL_SYNONYMS.get(word, word)
        if label in OPTION_LABELS and label not in found:
            found.append(label)
    return found[0] if len(found) == 1 else None


def judge_shape_answer(board: ShapeBoard, raw: str) -> str:
    """'correct', 'incorrect', or 'unparsable' (zero or >= 2 option words)."""
    answer = extract_shape_answer(raw)
    if answer is None:
        return "unparsable"
    return "correct" if answer == board.shape else "incorrect"


class Shapes(GameContract):
    kind = "shapes"

    def __init__(self, options: dict, seed: int):
        check_options(
            options,
            {
                "height": lambda v: isinstance(v, int),
                "width": lambda v: isinstance(v, int),
            },
        )
        height = options.get("height", 15)
        width = options.get("width", 15)
        if height < 5:
            raise ConfigError(f"invalid value for option 'height': {height}")
        if width < 5:
            raise ConfigError(f"invalid value for option 'width': {width}")
        self.options = {"height": height, "width": width}
        self.seed = seed
        self.board: ShapeBoard | None = None
        self._status = GameStatus()
        self.reset()

    def reset(self) -> None:
        rng = random.Random(self.seed)
        self.board, self._rendered = play_shape_round(rng, self.options)
        self._status = GameStatus()

    def status(self) -> GameStatus:
        return self._status

    def intro_prompt(self) -> str:
        return load_template("shapes").template

    def text_state(self, viewer: PlayerId) -> str:
        return self._rendered

    def legal_moves(self, player: PlayerId) -> list:
        return list(self.board.answer_options)

    def format_move(self, move) -> str:
        return str(move)

    def apply(self, player: PlayerId, move) -> MoveOutcome:
        if move not in OPTION_LABELS:
            return MoveOutcome.WRONG_MOVE
        if move == self.board.shape:
            self._status = GameStatus(True, player, Termination.WIN)
            return MoveOutcome.WIN
        self._status = GameStatus(True, player.opponent, Termination.WIN)
        return MoveOutcome.ACCEPTED
