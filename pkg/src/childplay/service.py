"""HTTP facade: molecule-puzzle endpoints and interactive game sessions.

Pure stdlib (ThreadingHTTPServer).  JSON in, JSON out, snake_case fields,
errors as {"error": text, "code": int}.  The store may snapshot itself to
disk; a snapshot holds seeds and move logs only, so reloading replays the
games deterministically and never persists hidden information wholesale.
"""

from __future__ import annotations

import json
import os
import random
import re
import secrets
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional

from .chem import canonical_smiles, evaluate_prediction, new_depicted_molecule
from .core import GameSession, PlayerId, new_session, replay_session
from .players import PlayerSpec, make_player
from .transport import Transport

SESSION_TTL_SECONDS = 24 * 60 * 60
REQUESTS_PER_MINUTE_CAP = 600  # fixed per-IP cap
GAME_KINDS_SERVED = (
    "tictactoe",
    "connectfour",
    "battleship",
    "shapes",
    "lcl_validity",
    "lcl_generation",
)
OPPONENT_KINDS = ("random", "minimax", "llm")

FALLBACK_INDEX = """<!doctype html>
<html><head><title>childplay</title></head>
<body><h1>childplay API</h1>
<p>No web client build found. API endpoints:</p>
<ul>
<li>POST /api/gts/new</li>
<li>POST /api/gts/evaluate</li>
<li>POST /api/games</li>
<li>POST /api/games/&lt;id&gt;/moves</li>
</ul></body></html>
"""


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def _new_token() -> str:
    return secrets.token_urlsafe(16)  # 128 bits


def make_puzzle(seed: int, options: dict | None = None):
    """The deterministic puzzle for a seed: (molecule, depiction)."""
    return new_depicted_molecule(random.Random(seed), options)


def puzzle_answer(seed: int, options: dict | None = None) -> str:
    """Canonical solution for a seeded puzzle (library-side helper; the API
    itself never reveals it)."""
    molecule, _ = make_puzzle(seed, options)
    return canonical_smiles(molecule)


@dataclass
class PuzzleSession:
    id: str
    seed: int
    molecule: object
    ascii_text: str
    created_at: float
    solved: bool = False


@dataclass
class LiveGame:
    id: str
    game_kind: str
    options: dict
    seed: int
    session: GameSession
    opponent: PlayerSpec
    opponent_player: object
    created_at: float
    human_side: PlayerId = PlayerId.P1
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory session map with optional JSON snapshot persistence."""

    def __init__(self, snapshot_path: Optional[str] = None, ttl: float = SESSION_TTL_SECONDS):
        self.snapshot_path = snapshot_path
        self.ttl = ttl
        self._lock = threading.RLock()
        self.puzzles: dict = {}
        self.games: dict = {}
        if snapshot_path and os.path.exists(snapshot_path):
            self._load_snapshot()

    # -- lifecycle

    def new_puzzle(self, seed: Optional[int] = None) -> PuzzleSession:
        if seed is None:
            seed = secrets.randbits(63)
        molecule, depiction = make_puzzle(seed)
        puzzle = PuzzleSession(
            id=_new_token(),
            seed=seed,
            molecule=molecule,
            ascii_text=depiction.text,
            created_at=time.time(),
        )
        with self._lock:
            self.puzzles[puzzle.id] = puzzle
            self._snapshot()
        return puzzle

    def get_puzzle(self, puzzle_id: str) -> PuzzleSession:
        with self._lock:
            self._prune()
            puzzle = self.puzzles.get(puzzle_id)
        if puzzle is None:
            raise ApiError(404, "unknown puzzle id")
        return puzzle

    def new_game(
        self,
        game_kind: str,
        opponent: PlayerSpec,
        opponent_player,
        seed: Optional[int] = None,
    ) -> LiveGame:
        if seed is None:
            seed = secrets.randbits(63)
        session = new_session(game_kind, {}, seed)
        game = LiveGame(
            id=_new_token(),
            game_kind=game_kind,
            options={},
            seed=seed,
            session=session,
            opponent=opponent,
            opponent_player=opponent_player,
            created_at=time.time(),
        )
        with self._lock:
            self.games[game.id] = game
            self._snapshot()
        return game

    def get_game(self, game_id: str) -> LiveGame:
        with self._lock:
            self._prune()
            game = self.games.get(game_id)
        if game is None:
            raise ApiError(404, "unknown game id")
        return game

    def mark_dirty(self) -> None:
        with self._lock:
            self._snapshot()

    def _prune(self) -> None:
        cutoff = time.time() - self.ttl
        for mapping in (self.puzzles, self.games):
            for key in [k for k, v in mapping.items() if v.created_at < cutoff]:
                del mapping[key]

    # -- persistence: seeds and move logs only

    def _snapshot(self) -> None:
        if not self.snapshot_path:
            return
        data = {
            "puzzles": [
                {
                    "id": p.id,
                    "seed": p.seed,
                    "created_at": p.created_at,
                    "solved": p.solved,
                }
                for p in self.puzzles.values()
            ],
            "games": [
                {
                    "id": g.id,
                    "game": g.game_kind,
                    "seed": g.seed,
                    "created_at": g.created_at,
                    "opponent": {
                        "kind": g.opponent.kind,
                        "model": g.opponent.model,
                        "temperature": g.opponent.temperature,
                    },
                    "moves": g.session.move_log(),
                }
                for g in self.games.values()
            ],
        }
        tmp = f"{self.snapshot_path}.tmp"
        with open(tmp, "w", encoding="utf-8") as handle:
            json.dump(data, handle)
        os.replace(tmp, self.snapshot_path)

    def _load_snapshot(self) -> None:
        with open(self.snapshot_path, encoding="utf-8") as handle:
            data = json.load(handle)
        for entry in data.get("puzzles", []):
            molecule, depiction = make_puzzle(entry["seed"])
            self.puzzles[entry["id"]] = PuzzleSession(
                id=entry["id"],
                seed=entry["seed"],
                molecule=molecule,
                ascii_text=depiction.text,
                created_at=entry["created_at"],
                solved=entry["solved"],
            )
        for entry in data.get("games", []):
            spec = PlayerSpec(
                kind=entry["opponent"]["kind"],
                model=entry["opponent"]["model"],
                temperature=entry["opponent"]["temperature"],
            )
            session = replay_session(entry["game"], {}, entry["seed"], entry["moves"])
            self.games[entry["id"]] = LiveGame(
                id=entry["id"],
                game_kind=entry["game"],
                options={},
                seed=entry["seed"],
                session=session,
                opponent=spec,
                opponent_player=None,  # rebuilt lazily by the app
                created_at=entry["created_at"],
            )


class RateLimiter:
    """Fixed per-IP cap: at most ``cap`` requests per sliding minute."""

    def __init__(self, cap: int = REQUESTS_PER_MINUTE_CAP):
        self.cap = cap
        self._lock = threading.Lock()
        self._hits: dict = {}

    def allow(self, ip: str) -> bool:
        now = time.time()
        with self._lock:
            window = [t for t in self._hits.get(ip, []) if now - t < 60.0]
            if len(window) >= self.cap:
                self._hits[ip] = window
                return False
            window.append(now)
            self._hits[ip] = window
            return True


class ChildPlayApp:
    """Route handlers, independent of the HTTP plumbing for testability."""

    def __init__(
        self,
        store: Optional[SessionStore] = None,
        opponent_transport: Optional[Transport] = None,
        rate_cap: int = REQUESTS_PER_MINUTE_CAP,
    ):
        self.store = store or SessionStore()
        self.opponent_transport = opponent_transport
        self.rate_limiter = RateLimiter(rate_cap)

    # -- puzzles

    def gts_new(self, body: dict) -> dict:
        seed = body.get("seed")
        if seed is not None and not isinstance(seed, int):
            raise ApiError(400, "seed must be an integer")
        puzzle = self.store.new_puzzle(seed)
        return {"id": puzzle.id, "ascii": puzzle.ascii_text}

    def gts_evaluate(self, body: dict) -> dict:
        puzzle_id = body.get("id")
        smiles = body.get("smiles")
        if not puzzle_id or smiles is None:
            raise ApiError(400, "fields 'id' and 'smiles' are required")
        puzzle = self.store.get_puzzle(puzzle_id)
        score = evaluate_prediction(puzzle.molecule, str(smiles))
        if score.correct:
            puzzle.solved = True
            self.store.mark_dirty()
        return score.to_dict()

    # -- live games

    def _opponent_player(self, game: LiveGame):
        if game.opponent_player is None:
            rng = random.Random(game.seed * 1_000_003 + 2)
            game.opponent_player = make_player(
                game.opponent, rng, self.opponent_transport, game.game_kind
            )
        return game.opponent_player

    def games_new(self, body: dict) -> dict:
        game_kind = body.get("game")
        opponent_raw = body.get("opponent", "random")
        seed = body.get("seed")
        if game_kind not in GAME_KINDS_SERVED:
            raise ApiError(400, f"unknown or unsupported game: {game_kind!r}")
        if seed is not None and not isinstance(seed, int):
            raise ApiError(400, "seed must be an integer")
        if isinstance(opponent_raw, str):
            opponent_raw = {"kind": opponent_raw}
        kind = opponent_raw.get("kind")
        if kind not in OPPONENT_KINDS:
            raise ApiError(400, f"unknown opponent kind: {kind!r}")
        if kind == "minimax" and game_kind != "tictactoe":
            raise ApiError(400, "minimax opponent is only valid for tictactoe")
        try:
            spec = PlayerSpec(
                kind=kind,
                model=opponent_raw.get("model"),
                temperature=opponent_raw.get("temperature", 1.0),
            )
        except ValueError as error:
            raise ApiError(400, str(error))
        game = self.store.new_game(game_kind, spec, None, seed)
        return {
            "id": game.id,
            "prompt": game.session.intro_prompt(),
            "state": game.session.text_state(game.human_side),
            "status": game.session.status.to_dict(),
        }

    def games_move(self, game_id: str, body: dict) -> dict:
        move = body.get("move")
        if move is None:
            raise ApiError(400, "field 'move' is required")
        game = self.store.get_game(game_id)
        with game.lock:
            session = game.session
            if session.status.over:
                raise ApiError(409, "game is over")
            if session.current_player is not game.human_side:
                raise ApiError(409, "not your turn")
            session.apply_move(game.human_side, str(move))
            opponent_move = None
            if not session.status.over:
                opponent = self._opponent_player(game)
                reply = opponent.move(session)
                session.apply_move(game.human_side.opponent, reply)
                opponent_move = reply
            self.store.mark_dirty()
            response = {
                "state": session.text_state(game.human_side),
                "status": session.status.to_dict(),
            }
            if opponent_move is not None:
                response["opponent_move"] = opponent_move
            return response

    # -- dispatch

    def handle(self, method: str, path: str, body: dict) -> tuple:
        if method == "POST" and path == "/api/gts/new":
            return 200, self.gts_new(body)
        if method == "POST" and path == "/api/gts/evaluate":
            return 200, self.gts_evaluate(body)
        if method == "POST" and path == "/api/games":
            return 200, self.games_new(body)
        match = re.fullmatch(r"/api/games/([A-Za-z0-9_\-]+)/moves", path)
        if method == "POST" and match:
            return 200, self.games_move(match.group(1), body)
        raise ApiError(404, f"no route for {method} {path}")


class _Handler(BaseHTTPRequestHandler):
    app: ChildPlayApp = None
    static_dir: Optional[str] = None

    # silence per-request stderr logging
    def log_message(self, *args):
        pass

    def _send_json(self, status: int, payload: dict) -> None:
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_POST(self):
        try:
            if not self.app.rate_limiter.allow(self.client_address[0]):
                raise ApiError(429, "rate limit exceeded")
            length = int(self.headers.get("Content-Length", 0))
            raw = self.rfile.read(length) if length else b"{}"
            try:
                body = json.loads(raw or b"{}")
            except json.JSONDecodeError:
                raise ApiError(400, "request body must be JSON")
            if not isinstance(body, dict):
                raise ApiError(400, "request body must be a JSON object")
            status, payload = self.app.handle("POST", self.path, body)
            self._send_json(status, payload)
        except ApiError as error:
            self._send_json(error.status, {"error": error.message, "code": error.status})
        except Exception as error:  # noqa: BLE001 - last-resort 500
            self._send_json(500, {"error": str(error), "code": 500})

    def do_GET(self):
        path = self.path.split("?", 1)[0]
        if path == "/":
            path = "/index.html"
        if self.static_dir:
            full = os.path.realpath(os.path.join(self.static_dir, path.lstrip("/")))
            if full.startswith(os.path.realpath(self.static_dir)) and os.path.isfile(full):
                content_type = {
                    ".html": "text/html",
                    ".js": "text/javascript",
                    ".css": "text/css",
                    ".png": "image/png",
                    ".svg": "image/svg+xml",
                }.get(os.path.splitext(full)[1], "application/octet-stream")
                with open(full, "rb") as handle:
                    data = handle.read()
                self.send_response(200)
                self.send_header("Content-Type", content_type)
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)
                return
        if path == "/index.html":
            data = FALLBACK_INDEX.encode("utf-8")
            self.send_response(200)
            self.send_header("Content-Type", "text/html")
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)
            return
        self._send_json(404, {"error": "not found", "code": 404})


def make_server(
    host: str = "127.0.0.1",
    port: int = 8080,
    store: Optional[SessionStore] = None,
    static_dir: Optional[str] = None,
    opponent_transport: Optional[Transport] = None,
    rate_cap: int = REQUESTS_PER_MINUTE_CAP,
) -> ThreadingHTTPServer:
    app = ChildPlayApp(
        store=store, opponent_transport=opponent_transport, rate_cap=rate_cap
    )
    handler = type(
        "BoundHandler", (_Handler,), {"app": app, "static_dir": static_dir}
    )
    server = ThreadingHTTPServer((host, port), handler)
    server.app = app
    return server


def serve_forever(server: ThreadingHTTPServer) -> None:
    """Block until interrupted; shuts down cleanly on SIGINT."""
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        server.server_close()
