"""Series runner and metrics: win/lose/tie tallies, wrong moves, missed
wins and blocks, heatmaps, binomial errors, and result persistence."""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .core import MoveOutcome, PlayerId, Termination, new_session
from .games.connectfour import C4Board, c4_check_win, c4_drop
from .games.tictactoe import BLANK, TttBoard, ttt_check_win
from .players import PlayerSpec, make_player, parse_move
from .transport import Transport, TransportError

HEATMAP_KINDS = ("tictactoe", "connectfour", "battleship")
DETECTOR_KINDS = ("tictactoe", "connectfour")

COMBINED_SCORE_GAMES = (
    "battleship",
    "tictactoe",
    "connectfour",
    "shapes",
    "lcl_validity",
    "lcl_generation",
    "gts",
)


@dataclass
class SeriesConfig:
    game_kind: str
    p1: PlayerSpec
    p2: PlayerSpec
    n_games: int
    master_seed: int = 0
    temperature: Optional[float] = None  # sugar: applied to P1 when P1 is an LLM
    options: dict = field(default_factory=dict)
    max_retries: int = 0

    def __post_init__(self):
        if self.n_games < 1:
            raise ValueError("n_games must be >= 1")
        if self.temperature is not None and self.p1.kind == "llm":
            self.p1.temperature = self.temperature


@dataclass
class GameLog:
    """One game: conversation, invalid-move counts, move log, and outcome."""

    index: int
    seed: int
    messages: list = field(default_factory=list)
    p1_wrong_moves: int = 0
    p2_wrong_moves: int = 0
    moves: list = field(default_factory=list)  # [{player, move, turn}, ...]
    outcome: dict = field(default_factory=dict)
    missed_wins: int = 0
    missed_blocks: int = 0

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "seed": self.seed,
            "messages": self.messages,
            "p1_wrong_moves": self.p1_wrong_moves,
            "p2_wrong_moves": self.p2_wrong_moves,
            "moves": self.moves,
            "outcome": self.outcome,
            "missed_wins": self.missed_wins,
            "missed_blocks": self.missed_blocks,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GameLog":
        return cls(**data)


@dataclass
class SeriesResult:
    game_kind: str
    n_games: int
    options: dict
    master_seed: int
    p1_wins: int = 0
    p2_wins: int = 0
    ties: int = 0
    turn_limit_draws: int = 0
    p1_wrong_moves: int = 0
    p2_wrong_moves: int = 0
    missed_wins: int = 0
    missed_blocks: int = 0
    avg_moves: float = 0.0
    heatmap: Optional[list] = None
    per_game_logs: list = field(default_factory=list)

    @property
    def p1_win_rate(self) -> float:
        return self.p1_wins / self.n_games


@dataclass
class ProportionStat:
    """A binomial proportion with its spread.

    ``sd`` is the standard deviation of the proportion sqrt(p(1-p)/n);
    ``se`` is the sample standard deviation of the 0/1 outcomes divided by
    sqrt(n), in percent.
    """

    p: float
    n: int
    sd: float
    se: float


def binomial_stats(successes: int, n: int) -> ProportionStat:
    if not 0 <= successes <= n or n < 1:
        raise ValueError(f"bad tally: {successes}/{n}")
    p = successes / n
    sd = math.sqrt(p * (1 - p) / n)
    se = math.sqrt(p * (1 - p) / (n - 1)) * 100.0 if n > 1 else 0.0
    return ProportionStat(p=p, n=n, sd=sd, se=se)


# ---------------------------------------------------------------------------
# one-ply detectors


def _ttt_winning_moves(board: TttBoard, player: PlayerId) -> set:
    wins = set()
    for r in range(3):
        for c in range(3):
            if board.cells[r][c] != BLANK:
                continue
            probe = board.copy()
            probe.cells[r][c] = {PlayerId.P1: "X", PlayerId.P2: "O"}[player]
            if ttt_check_win(probe, player):
                wins.add((r, c))
    return wins


def _c4_winning_moves(board: C4Board, player: PlayerId) -> set:
    wins = set()
    for col in range(7):
        probe = board.copy()
        if c4_drop(probe, player, col) is MoveOutcome.WRONG_MOVE:
            continue
        if c4_check_win(probe):
            wins.add(col)
    return wins


def _winning_moves(game_kind: str, board, player: PlayerId) -> set:
    if game_kind == "tictactoe":
        return _ttt_winning_moves(board, player)
    if game_kind == "connectfour":
        return _c4_winning_moves(board, player)
    raise ValueError(f"missed-win/block detection is undefined for {game_kind!r}")


def _apply_to_copy(game_kind: str, board, player: PlayerId, move):
    probe = board.copy()
    if game_kind == "tictactoe":
        r, c = move
        probe.cells[r][c] = {PlayerId.P1: "X", PlayerId.P2: "O"}[player]
    else:
        c4_drop(probe, player, move)
    return probe


def detect_missed_win(game_kind: str, board, player: PlayerId, move) -> bool:
    """True iff an immediately winning move existed and ``move`` was not one."""
    wins = _winning_moves(game_kind, board, player)
    return bool(wins) and move not in wins


def detect_missed_block(game_kind: str, board, player: PlayerId, move) -> bool:
    """True iff the opponent had an immediate win available, the player's
    move did not win outright, and the threat survived the move.

    Winning supersedes blocking; multi-threat positions count once.
    """
    threats = _winning_moves(game_kind, board, player.opponent)
    if not threats:
        return False
    if move in _winning_moves(game_kind, board, player):
        return False
    after = _apply_to_copy(game_kind, board, player, move)
    return bool(_winning_moves(game_kind, after, player.opponent))


def accumulate_heatmap(result: SeriesResult, move) -> list:
    """Count an accepted move: (row, col) cell, already landing-resolved."""
    row, col = move
    result.heatmap[row][col] += 1
    return result.heatmap


# ---------------------------------------------------------------------------
# game and series loops


def _heatmap_grid(game_kind: str, options: dict) -> Optional[list]:
    if game_kind == "tictactoe":
        size = (3, 3)
    elif game_kind == "connectfour":
        size = (7, 7)
    elif game_kind == "battleship":
        n = options.get("board_size", 5)
        size = (n, n)
    else:
        return None
    return [[0] * size[1] for _ in range(size[0])]


def _player_rngs(game_seed: int):
    import random

    return {
        PlayerId.P1: random.Random(game_seed * 1_000_003 + 1),
        PlayerId.P2: random.Random(game_seed * 1_000_003 + 2),
    }


def play_one_game(
    config: SeriesConfig, game_index: int, transport: Optional[Transport] = None
) -> GameLog:
    """Simulate a single game; deterministic given seeds and player stubs."""
    game_seed = config.master_seed + game_index
    session = new_session(config.game_kind, config.options, game_seed)
    rngs = _player_rngs(game_seed)
    players = {
        PlayerId.P1: make_player(
            config.p1, rngs[PlayerId.P1], transport, config.game_kind
        ),
        PlayerId.P2: make_player(
            config.p2, rngs[PlayerId.P2], transport, config.game_kind
        ),
    }
    log = GameLog(index=game_index, seed=game_seed)
    detect = config.game_kind in DETECTOR_KINDS

    while not session.status.over:
        side = session.current_player
        state = session.text_state(side)
        outcome = MoveOutcome.WRONG_MOVE
        for attempt in range(config.max_retries + 1):
            raw = players[side].move(session)
            log.messages.append({"player": side.value, "state": state, "reply": raw})
            board_before = session.engine.board.copy() if detect else None
            final_attempt = attempt == config.max_retries
            outcome = session.apply_move(side, raw, forfeit_on_wrong=final_attempt)
            if outcome is not MoveOutcome.WRONG_MOVE:
                break
            if side is PlayerId.P1:
                log.p1_wrong_moves += 1
            else:
                log.p2_wrong_moves += 1
        if outcome is MoveOutcome.WRONG_MOVE:
            break
        if detect and side is PlayerId.P1:
            played = session.moves[-1].parsed
            if detect_missed_win(config.game_kind, board_before, side, played):
                log.missed_wins += 1
            if detect_missed_block(config.game_kind, board_before, side, played):
                log.missed_blocks += 1

    log.moves = session.move_log()
    log.outcome = session.status.to_dict()
    return log


def run_series(
    config: SeriesConfig,
    transport: Optional[Transport] = None,
    workers: int = 1,
) -> SeriesResult:
    """Play n_games and aggregate; results merge by commutative addition,
    so the worker fan-out never affects the output.

    Parallel workers require a transport that is safe for concurrent use
    (the live one is; fixtures and stubs are sequential).
    """
    logs: list = []
    try:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                logs = list(
                    pool.map(
                        lambda i: play_one_game(config, i, transport),
                        range(config.n_games),
                    )
                )
        else:
            for index in range(config.n_games):
                logs.append(play_one_game(config, index, transport))
    except TransportError as error:
        # callers can flush what completed before aborting
        error.partial_logs = logs
        raise
    return aggregate_logs(config, logs)


def aggregate_logs(config: SeriesConfig, logs: list) -> SeriesResult:
    """Fold game logs into a SeriesResult (n_games = number of logs, so a
    partial flush keeps the accounting identity)."""
    result = SeriesResult(
        game_kind=config.game_kind,
        n_games=len(logs),
        options=dict(config.options),
        master_seed=config.master_seed,
        heatmap=_heatmap_grid(config.game_kind, config.options),
    )
    total_moves = 0
    for log in logs:
        result.per_game_logs.append(log)
        result.p1_wrong_moves += log.p1_wrong_moves
        result.p2_wrong_moves += log.p2_wrong_moves
        result.missed_wins += log.missed_wins
        result.missed_blocks += log.missed_blocks
        total_moves += len(log.moves)
        winner = log.outcome.get("winner")
        termination = log.outcome.get("termination")
        if termination == Termination.TURN_LIMIT.value:
            result.turn_limit_draws += 1
        elif winner == PlayerId.P1.value:
            result.p1_wins += 1
        elif winner == PlayerId.P2.value:
            result.p2_wins += 1
        else:
            result.ties += 1
        if result.heatmap is not None:
            if config.game_kind == "connectfour":
                # landing rows come from a deterministic replay
                from .games.connectfour import c4_landing_row

                replay = new_session(config.game_kind, config.options, log.seed)
                for entry in log.moves:
                    player = PlayerId(entry["player"])
                    parsed = parse_move(config.game_kind, entry["move"])
                    if player is PlayerId.P1:
                        row = c4_landing_row(replay.engine.board, parsed)
                        accumulate_heatmap(result, (row, parsed))
                    replay.apply_move(player, entry["move"])
            else:
                for entry in log.moves:
                    if entry["player"] == PlayerId.P1.value:
                        accumulate_heatmap(
                            result, parse_move(config.game_kind, entry["move"])
                        )

    result.avg_moves = total_moves / result.n_games if result.n_games else 0.0
    return result


def combined_score(per_game_bests: dict) -> float:
    """Arithmetic mean of the seven per-game percentages."""
    missing = [game for game in COMBINED_SCORE_GAMES if game not in per_game_bests]
    if missing:
        raise ValueError(f"missing metrics for: {', '.join(missing)}")
    return sum(float(per_game_bests[game]) for game in COMBINED_SCORE_GAMES) / len(
        COMBINED_SCORE_GAMES
    )


# ---------------------------------------------------------------------------
# persistence

RESULT_KEYS = {
    "P1 Wins": "p1_wins",
    "P2 Wins": "p2_wins",
    "Ties": "ties",
    "Turn Limit Draws": "turn_limit_draws",
    "P1 Wrong Moves": "p1_wrong_moves",
    "P2 Wrong Moves": "p2_wrong_moves",
    "Missed Wins": "missed_wins",
    "Missed Blocks": "missed_blocks",
}


def result_to_dict(result: SeriesResult) -> dict:
    data = {
        "Game": result.game_kind,
        "N Games": result.n_games,
        "Options": result.options,
        "Master Seed": result.master_seed,
        "Average Moves": result.avg_moves,
        "Heatmap": result.heatmap,
        "Games": [log.to_dict() for log in result.per_game_logs],
    }
    for key, attr in RESULT_KEYS.items():
        data[key] = getattr(result, attr)
    return data


def result_from_dict(data: dict) -> SeriesResult:
    result = SeriesResult(
        game_kind=data["Game"],
        n_games=data["N Games"],
        options=data["Options"],
        master_seed=data["Master Seed"],
        avg_moves=data["Average Moves"],
        heatmap=data["Heatmap"],
        per_game_logs=[GameLog.from_dict(entry) for entry in data["Games"]],
    )
    for key, attr in RESULT_KEYS.items():
        setattr(result, attr, data[key])
    return result


def export_results(
    result: SeriesResult,
    out_dir,
    formats: tuple = ("json", "csv"),
    plots: bool = False,
) -> dict:
    """Write results under ``out_dir``; returns {format: path}.

    JSON is the round-trippable record; CSV is a one-row summary; plots are
    a rates bar chart and (for board games) a heatmap image whose pixel
    dimensions equal the board size.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    if "json" in formats:
        path = os.path.join(out_dir, "results.json")
        _atomic_write(path, json.dumps(result_to_dict(result), indent=2, sort_keys=True))
        paths["json"] = path
    if "csv" in formats:
        path = os.path.join(out_dir, "summary.csv")
        fields = ["Game", "N Games", "Average Moves"] + list(RESULT_KEYS)
        row = {
            "Game": result.game_kind,
            "N Games": result.n_games,
            "Average Moves": result.avg_moves,
        }
        for key, attr in RESULT_KEYS.items():
            row[key] = getattr(result, attr)
        _atomic_write_csv(path, fields, [row])
        paths["csv"] = path
    if plots:
        paths.update(export_plots(result, out_dir))
    return paths


def load_results(path) -> SeriesResult:
    with open(path, encoding="utf-8") as handle:
        return result_from_dict(json.load(handle))


def export_plots(result: SeriesResult, out_dir) -> dict:
    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    if result.heatmap is not None:
        path = os.path.join(out_dir, "heatmap.png")
        write_heatmap_image(result.heatmap, path)
        paths["heatmap"] = path
    path = os.path.join(out_dir, "rates.png")
    write_rates_chart(result, path)
    paths["rates"] = path
    return paths


def write_heatmap_image(heatmap: list, path) -> None:
    """Grayscale PNG, one pixel per board cell."""
    from PIL import Image

    height = len(heatmap)
    width = len(heatmap[0])
    peak = max((cell for row in heatmap for cell in row), default=0) or 1
    image = Image.new("L", (width, height))
    for r in range(height):
        for c in range(width):
            image.putpixel((c, r), int(255 * heatmap[r][c] / peak))
    image.save(path)


def write_rates_chart(result: SeriesResult, path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = ["P1 wins", "P2 wins", "Ties", "Turn limit"]
    values = [
        result.p1_wins,
        result.p2_wins,
        result.ties,
        result.turn_limit_draws,
    ]
    figure, axis = plt.subplots(figsize=(4, 3))
    axis.bar(labels, values, color=["#4c72b0", "#dd8452", "#55a868", "#c44e52"])
    axis.set_ylabel("games")
    axis.set_title(f"{result.game_kind}: {result.n_games} games")
    figure.tight_layout()
    figure.savefig(path)
    plt.close(figure)


def _atomic_write(path, text: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(text)
    os.replace(tmp, path)


def _atomic_write_csv(path, fields: list, rows: list) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    os.replace(tmp, path)
