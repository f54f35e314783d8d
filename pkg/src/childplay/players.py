"""Pluggable move providers and the per-game response parsers.

Parsing is deliberately lenient: the first integer tokens of a reply are
extracted and the engine then validates bounds and occupancy, so chatty
replies like "I'll play 0 2" still count as moves.  A ``strict`` flag on
:func:`parse_move` enforces whole-message grammar instead.
"""

from __future__ import annotations

import random
import re
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .chem import strip_answer
from .core import GameSession, PlayerId
from .games.shapes import extract_shape_answer
from .games.tictactoe import BLANK, MARKS, TttBoard
from .lcl import LclParseError, extract_validity_answer, parse_construct
from .transport import Transport, TransportError

INT_TOKEN_RE = re.compile(r"-?\d+")
STRICT_PAIR_RE = re.compile(r"^\s*(-?\d+)\s+(-?\d+)\s*$")
STRICT_SINGLE_RE = re.compile(r"^\s*(-?\d+)\s*$")


@dataclass
class PlayerSpec:
    """How to obtain moves: random, minimax, a remote model, or a human."""

    kind: str
    model: Optional[str] = None
    temperature: float = 1.0
    endpoint: Optional[str] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("random", "minimax", "llm", "human"):
            raise ValueError(f"unknown player kind: {self.kind!r}")
        if self.kind == "llm" and not self.model:
            raise ValueError("llm players require a model name")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature out of range: {self.temperature}")


def parse_move(game_kind: str, raw: str, strict: bool = False):
    """Extract a structured move from a raw reply; None when unparsable.

    Total: every input maps to a move or None, never an exception.
    """
    if not isinstance(raw, str):
        return None
    if game_kind in ("tictactoe", "battleship"):
        if strict:
            match = STRICT_PAIR_RE.match(raw)
            return (int(match.group(1)), int(match.group(2))) if match else None
        tokens = INT_TOKEN_RE.findall(raw)
        if len(tokens) < 2:
            return None
        return (int(tokens[0]), int(tokens[1]))
    if game_kind == "connectfour":
        if strict:
            match = STRICT_SINGLE_RE.match(raw)
            return int(match.group(1)) if match else None
        tokens = INT_TOKEN_RE.findall(raw)
        return int(tokens[0]) if tokens else None
    if game_kind == "shapes":
        return extract_shape_answer(raw)
    if game_kind == "lcl_validity":
        return extract_validity_answer(raw)
    if game_kind == "lcl_generation":
        try:
            return parse_construct(raw.strip())
        except LclParseError:
            return None
    if game_kind == "gts":
        answer = strip_answer(raw)
        return answer or None
    return None


def random_move(session: GameSession, rng: random.Random) -> str:
    """Uniform choice over the legal moves, formatted in the move grammar."""
    moves = session.legal_moves()
    if not moves:
        raise ValueError(f"{session.game_kind} has no enumerable moves")
    return session.engine.format_move(rng.choice(moves))


# ---------------------------------------------------------------------------
# full-depth minimax for the 3x3 game


def _wins(cells: tuple, mark: str) -> bool:
    lines = (
        (0, 1, 2), (3, 4, 5), (6, 7, 8),
        (0, 3, 6), (1, 4, 7), (2, 5, 8),
        (0, 4, 8), (2, 4, 6),
    )
    return any(cells[a] == cells[b] == cells[c] == mark for a, b, c in lines)


@lru_cache(maxsize=None)
def _solve(cells: tuple, mark: str) -> tuple:
    """Best (outcome, plies) for ``mark`` to move: outcome 1 win / 0 tie /
    -1 loss; plies to the end under the faster-win slower-loss policy."""
    best = None
    other = "O" if mark == "X" else "X"
    for index in range(9):
        if cells[index] != BLANK:
            continue
        child = cells[:index] + (mark,) + cells[index + 1:]
        if _wins(child, mark):
            candidate = (1, 1)
        elif BLANK not in child:
            candidate = (0, 1)
        else:
            outcome, plies = _solve(child, other)
            candidate = (-outcome, plies + 1)
        if best is None or _better(candidate, best):
            best = candidate
    return best


def _better(a: tuple, b: tuple) -> bool:
    if a[0] != b[0]:
        return a[0] > b[0]
    if a[0] > 0:
        return a[1] < b[1]  # faster win
    if a[0] < 0:
        return a[1] > b[1]  # slower loss
    return False


def minimax_move(board: TttBoard, player: PlayerId) -> str:
    """Optimal move for ``player``; never loses from any reachable position.

    Equal-value moves break ties by depth (faster wins, slower losses) and
    then by lowest (row, col), so baselines are bit-reproducible.
    """
    cells = tuple(cell for row in board.cells for cell in row)
    mark = MARKS[player]
    other = "O" if mark == "X" else "X"
    best_key = None
    best_move = None
    for r in range(3):
        for c in range(3):
            index = 3 * r + c
            if cells[index] != BLANK:
                continue
            child = cells[:index] + (mark,) + cells[index + 1:]
            if _wins(child, mark):
                value = (1, 1)
            elif BLANK not in child:
                value = (0, 1)
            else:
                outcome, plies = _solve(child, other)
                value = (-outcome, plies + 1)
            key = (
                -value[0],
                value[1] if value[0] > 0 else (-value[1] if value[0] < 0 else 0),
                (r, c),
            )
            if best_key is None or key < best_key:
                best_key = key
                best_move = (r, c)
    if best_move is None:
        raise ValueError("no legal moves: board is terminal")
    return f"{best_move[0]} {best_move[1]}"


def llm_move(session: GameSession, spec: PlayerSpec, transport: Transport) -> str:
    """One chat-completion round trip; the raw reply is returned verbatim.

    Transport failures are retried 3 times with exponential backoff, then
    re-raised so the series aborts (a transport error is never scored as a
    wrong move).
    """
    request = {
        "model": spec.model,
        "temperature": spec.temperature,
        "messages": [
            {"role": "system", "content": session.intro_prompt()},
            {
                "role": "user",
                "content": session.text_state(session.current_player) + "Your move:",
            },
        ],
    }
    delay = 0.5
    for attempt in range(4):
        try:
            return transport.complete(request)
        except TransportError as error:
            if attempt == 3 or not getattr(error, "retryable", True):
                raise
            time.sleep(delay)
            delay *= 2
    raise AssertionError("unreachable")


class Player:
    """A move provider bound to one session at a time."""

    name = "player"

    def move(self, session: GameSession) -> str:
        raise NotImplementedError


class RandomPlayer(Player):
    name = "random"

    def __init__(self, rng: random.Random):
        self.rng = rng

    def move(self, session: GameSession) -> str:
        return random_move(session, self.rng)


class MinimaxPlayer(Player):
    name = "minimax"

    def move(self, session: GameSession) -> str:
        if session.game_kind != "tictactoe":
            raise ValueError("minimax plays tictactoe only")
        return minimax_move(session.engine.board, session.current_player)


class LLMPlayer(Player):
    def __init__(self, spec: PlayerSpec, transport: Transport):
        self.spec = spec
        self.transport = transport
        self.name = spec.model or "llm"

    def move(self, session: GameSession) -> str:
        return llm_move(session, self.spec, self.transport)


class HumanPlayer(Player):
    """Console player: prints the state, reads a line."""

    name = "human"

    def __init__(self, input_fn=input, output_fn=print):
        self.input_fn = input_fn
        self.output_fn = output_fn

    def move(self, session: GameSession) -> str:
        self.output_fn(session.text_state(session.current_player))
        return self.input_fn("Your move: ")


class ScriptedPlayer(Player):
    """Replays a fixed move list; for tests and fixtures."""

    name = "scripted"

    def __init__(self, moves: list):
        self.moves = list(moves)
        self.cursor = 0

    def move(self, session: GameSession) -> str:
        if self.cursor >= len(self.moves):
            raise IndexError("scripted player ran out of moves")
        move = self.moves[self.cursor]
        self.cursor += 1
        return move


def make_player(
    spec: PlayerSpec,
    rng: Optional[random.Random] = None,
    transport: Optional[Transport] = None,
    game_kind: Optional[str] = None,
) -> Player:
    if spec.kind == "random":
        return RandomPlayer(rng if rng is not None else random.Random(spec.seed))
    if spec.kind == "minimax":
        if game_kind is not None and game_kind != "tictactoe":
            raise ValueError("minimax is only valid for tictactoe")
        return MinimaxPlayer()
    if spec.kind == "llm":
        if transport is None:
            if spec.endpoint is None:
                raise ValueError("llm players need a transport or an endpoint")
            from .transport import LiveTransport

            transport = LiveTransport(endpoint=spec.endpoint)
        return LLMPlayer(spec, transport)
    return HumanPlayer()
