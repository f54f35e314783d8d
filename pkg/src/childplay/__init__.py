"""Deterministic game benchmark suite with pluggable players.

Six ASCII-encoded games (tic-tac-toe, connect-four, battleship, shape
recognition, a brick construct language, and molecule guessing), players
(random, minimax, remote LLM, human), a metrics pipeline, and an HTTP
service for interactive play.
"""

from .core import (
    ConfigError,
    GameContract,
    GameSession,
    GameStatus,
    MoveOutcome,
    MoveRecord,
    PlayerId,
    ProtocolError,
    Termination,
    new_session,
    replay_session,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "GameContract",
    "GameSession",
    "GameStatus",
    "MoveOutcome",
    "MoveRecord",
    "PlayerId",
    "ProtocolError",
    "Termination",
    "new_session",
    "replay_session",
    "__version__",
]
