"""Uniform game contract, session lifecycle, and shared outcome vocabulary.

Every engine in this suite implements :class:`GameContract`; the harness,
the HTTP service, and the CLI only ever talk to engines through
:class:`GameSession`, which adds turn order, move parsing, the uniform
forfeit rule, and the move log.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional


class ConfigError(ValueError):
    """A game kind or option value is invalid; the message names the key."""


class ProtocolError(RuntimeError):
    """The caller misused the session API (out-of-turn or post-game move).

    Distinct from a wrong move: a wrong move is the player's fault and
    forfeits the game, a protocol error is the caller's bug.
    """


class PlayerId(Enum):
    P1 = "P1"
    P2 = "P2"

    @property
    def opponent(self) -> "PlayerId":
        return PlayerId.P2 if self is PlayerId.P1 else PlayerId.P1


class MoveOutcome(Enum):
    ACCEPTED = "accepted"
    WIN = "win"
    TIE = "tie"
    WRONG_MOVE = "wrong_move"


class Termination(Enum):
    WIN = "win"
    TIE = "tie"
    FORFEIT = "forfeit"
    TURN_LIMIT = "turn_limit"


@dataclass
class GameStatus:
    """Terminal bookkeeping. ``winner`` is set iff termination is WIN or FORFEIT."""

    over: bool = False
    winner: Optional[PlayerId] = None
    termination: Optional[Termination] = None

    def to_dict(self) -> dict:
        return {
            "over": self.over,
            "winner": self.winner.value if self.winner else None,
            "termination": self.termination.value if self.termination else None,
        }


@dataclass
class MoveRecord:
    player: PlayerId
    move: str
    parsed: Any
    turn: int


GAME_KINDS = (
    "tictactoe",
    "connectfour",
    "battleship",
    "shapes",
    "lcl_validity",
    "lcl_generation",
    "gts",
)


class GameContract(ABC):
    """Behavioral interface every engine provides.

    Engines are plain state machines: no interior sharing, safe to move
    between workers, never shared mutably.  ``apply`` is given an already
    parsed move and must reject illegal input by returning WRONG_MOVE
    *without mutating state*; whether that costs the game is the session's
    call (uniform forfeit rule, overridable via ``max_retries``).
    """

    kind: str = ""

    @abstractmethod
    def reset(self) -> None:
        """Return the engine to its documented initial state."""

    @abstractmethod
    def text_state(self, viewer: PlayerId) -> str:
        """ASCII rendering of the state as seen by ``viewer``. Pure."""

    @abstractmethod
    def intro_prompt(self) -> str:
        """The rules/instructions prompt shown once at game start."""

    @abstractmethod
    def legal_moves(self, player: PlayerId) -> list:
        """Enumerable legal moves for ``player`` (empty for free-form games)."""

    @abstractmethod
    def format_move(self, move: Any) -> str:
        """Render a structured move in the game's move grammar."""

    @abstractmethod
    def apply(self, player: PlayerId, move: Any) -> MoveOutcome:
        """Apply a parsed move; illegal input yields WRONG_MOVE, no mutation."""

    @abstractmethod
    def status(self) -> GameStatus:
        ...

    def force_forfeit(self, loser: PlayerId) -> None:
        """Record a forfeit loss for ``loser`` (set by the session)."""
        st = self.status()
        st.over = True
        st.winner = loser.opponent
        st.termination = Termination.FORFEIT


class GameSession:
    """One running game: engine + current player + status + move log.

    Single-owner: exactly one worker mutates a session at a time.
    """

    def __init__(self, game_kind: str, engine: GameContract, options: dict, seed: int):
        self.game_kind = game_kind
        self.engine = engine
        self.options = dict(options)
        self.seed = seed
        self.current_player = PlayerId.P1
        self.moves: list[MoveRecord] = []

    @property
    def status(self) -> GameStatus:
        return self.engine.status()

    def text_state(self, viewer: PlayerId) -> str:
        return self.engine.text_state(viewer)

    def intro_prompt(self) -> str:
        return self.engine.intro_prompt()

    def legal_moves(self, player: Optional[PlayerId] = None) -> list:
        return self.engine.legal_moves(player or self.current_player)

    def apply_move(
        self, player: PlayerId, raw: str, *, forfeit_on_wrong: bool = True
    ) -> MoveOutcome:
        """Parse ``raw`` per the game's move grammar and play it.

        Illegal or unparsable input yields WRONG_MOVE; with
        ``forfeit_on_wrong`` (the default) that ends the game with the
        opponent winning by forfeit.  Out-of-turn or post-game submissions
        raise :class:`ProtocolError` instead.
        """
        if self.status.over:
            raise ProtocolError("game is over")
        if player is not self.current_player:
            raise ProtocolError(
                f"out of turn: {player.value} moved on {self.current_player.value}'s turn"
            )

        from .players import parse_move  # engines <-> parsers would cycle at import time

        parsed = parse_move(self.game_kind, raw)
        if parsed is None:
            if forfeit_on_wrong:
                self.engine.force_forfeit(player)
            return MoveOutcome.WRONG_MOVE

        outcome = self.engine.apply(player, parsed)
        if outcome is MoveOutcome.WRONG_MOVE:
            if forfeit_on_wrong:
                self.engine.force_forfeit(player)
            return outcome

        self.moves.append(
            MoveRecord(player=player, move=raw, parsed=parsed, turn=len(self.moves) + 1)
        )
        self.current_player = self.current_player.opponent
        return outcome

    def move_log(self) -> list[dict]:
        """Move log in the wire schema: [{player, move, turn}, ...]."""
        return [
            {"player": r.player.value, "move": r.move, "turn": r.turn}
            for r in self.moves
        ]


def _parse_move_log(game_kind: str, log: list[dict]) -> list[MoveRecord]:
    from .players import parse_move

    records = []
    for entry in log:
        records.append(
            MoveRecord(
                player=PlayerId(entry["player"]),
                move=entry["move"],
                parsed=parse_move(game_kind, entry["move"]),
                turn=entry["turn"],
            )
        )
    return records


def new_session(game_kind: str, options: dict, seed: int) -> GameSession:
    """Create a deterministic session: same (kind, options, seed) gives an
    identical initial state, including ship layouts and hidden figures."""
    from .games import ENGINE_FACTORIES

    if game_kind not in GAME_KINDS:
        raise ConfigError(f"unknown game kind: {game_kind!r}")
    options = dict(options or {})
    engine = ENGINE_FACTORIES[game_kind](options, seed)
    return GameSession(game_kind, engine, options, seed)


def replay_session(game_kind: str, options: dict, seed: int, log: list[dict]) -> GameSession:
    """Rebuild a session by replaying a move log against a fresh engine.

    Replay determinism: with the original seed this reproduces the
    identical final text_state.
    """
    session = new_session(game_kind, options, seed)
    for entry in log:
        session.apply_move(PlayerId(entry["player"]), entry["move"])
    return session


def check_options(options: dict, allowed: dict[str, Any]) -> None:
    """Reject unknown option keys; ``allowed`` maps key -> validator or None."""
    for key, value in options.items():
        if key not in allowed:
            raise ConfigError(f"unknown option: {key!r}")
        validator = allowed[key]
        if validator is not None and not validator(value):
            raise ConfigError(f"invalid value for option {key!r}: {value!r}")


def seeded_rng(seed: int) -> random.Random:
    return random.Random(seed)
