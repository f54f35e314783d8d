"""Operator entry point: run series, sweep matrices, serve the API, report.

Exit codes: 0 ok, 2 configuration error, 3 transport failure, 4 port busy,
5 empty input.  Fixture and stub transports never touch the network, so
benchmark runs are reproducible in CI.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .core import ConfigError, GAME_KINDS
from .harness import (
    SeriesConfig,
    binomial_stats,
    combined_score,
    export_plots,
    export_results,
    load_results,
    run_series,
)
from .players import PlayerSpec
from .transport import StubTransport, TransportError, make_transport

DEFAULT_TEMPERATURES = (0.0, 0.5, 1.0, 1.5)
DEFAULT_MATRIX_GAMES = ("tictactoe", "connectfour", "battleship")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_TRANSPORT = 3
EXIT_PORT = 4
EXIT_EMPTY = 5


def parse_player_spec(text: str) -> PlayerSpec:
    """'random', 'minimax', 'human', or 'llm:<model>'."""
    if text.startswith("llm:"):
        return PlayerSpec(kind="llm", model=text.split(":", 1)[1])
    if text in ("random", "minimax", "human"):
        return PlayerSpec(kind=text)
    raise ConfigError(f"unknown player spec: {text!r}")


def parse_option(text: str) -> tuple:
    if "=" not in text:
        raise ConfigError(f"options are key=value, got {text!r}")
    key, raw = text.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def _stub_reply(request: dict) -> str:
    """Deterministic offline opponent: picks a legal-looking move by reading
    the rendered state, so the full prompt/parse pipeline gets exercised."""
    system = request["messages"][0]["content"]
    state = request["messages"][-1]["content"]
    if "Tic-Tac-Toe" in system:
        lines = [l for l in state.splitlines() if l[:1].isdigit()]
        for line in lines:
            row = int(line[0])
            cells = line[2:].split("|")
            for col, cell in enumerate(cells):
                if cell == " " or cell == "":
                    return f"{row} {col}"
        return "0 0"
    if "Connect-Four" in system:
        rows = [l.split() for l in state.splitlines()[1:] if l and l[0] in ".XO"]
        if rows:
            for col in range(len(rows[0])):
                if rows[0][col] == ".":
                    return str(col)
        return "0"
    if "Battleship" in system:
        section = state.split("Your guesses:")[-1]
        for line in section.splitlines():
            if line[:1].isdigit():
                row = int(line.split()[0])
                cells = line[2:].split(" ")
                for col, cell in enumerate(cells):
                    if cell == "~":
                        return f"{row} {col}"
        return "0 0"
    if "Lego" in system and "valid structure" in system:
        return "((0, 0, 'red'), (2, 1, 'blue'), (4, 2, 'green'))"
    if "Lego" in system:
        return "valid"
    if "SMILES" in system:
        return "CCO"
    if "shape" in system:
        return "cross"
    return "0 0"


def build_transport(name: str, fixture_path=None):
    if name == "stub":
        return StubTransport(_stub_reply)
    return make_transport(name, fixture_path=fixture_path)


def _print_tally(result) -> None:
    stat = binomial_stats(result.p1_wins, result.n_games)
    print(f"Game:           {result.game_kind}")
    print(f"Games played:   {result.n_games}")
    print(f"P1 wins:        {result.p1_wins} ({100 * stat.p:.2f}% +/- {100 * stat.sd:.2f} SD)")
    print(f"P2 wins:        {result.p2_wins}")
    print(f"Ties:           {result.ties}")
    print(f"Turn limits:    {result.turn_limit_draws}")
    print(f"P1 wrong moves: {result.p1_wrong_moves}")
    print(f"P2 wrong moves: {result.p2_wrong_moves}")
    print(f"Missed wins:    {result.missed_wins}")
    print(f"Missed blocks:  {result.missed_blocks}")
    print(f"Average moves:  {result.avg_moves:.2f}")


def cmd_run(args) -> int:
    try:
        options = dict(parse_option(text) for text in args.option or [])
        config = SeriesConfig(
            game_kind=args.game,
            p1=parse_player_spec(args.p1),
            p2=parse_player_spec(args.p2),
            n_games=args.n,
            master_seed=args.seed,
            temperature=args.temperature,
            options=options,
            max_retries=args.max_retries,
        )
        transport = build_transport(args.transport, args.fixture)
    except (ConfigError, ValueError) as error:
        print(f"configuration error: {error}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        result = run_series(config, transport=transport, workers=args.workers)
    except TransportError as error:
        print(f"transport failure: {error}", file=sys.stderr)
        partial = getattr(error, "partial_logs", None)
        if args.out and partial:
            from .harness import aggregate_logs

            export_results(aggregate_logs(config, partial), args.out)
            print(
                f"flushed {len(partial)} completed games to {args.out}",
                file=sys.stderr,
            )
        return EXIT_TRANSPORT
    except ConfigError as error:
        print(f"configuration error: {error}", file=sys.stderr)
        return EXIT_CONFIG

    if args.out:
        export_results(result, args.out, plots=args.plots)
    _print_tally(result)
    return EXIT_OK


def _matrix_cells(manifest: dict):
    games = manifest.get("games", list(DEFAULT_MATRIX_GAMES))
    models = manifest.get("models", ["random"])
    temperatures = manifest.get("temperatures", list(DEFAULT_TEMPERATURES))
    for game in games:
        for model in models:
            for temperature in temperatures:
                yield game, model, temperature


def _cell_dir(out_dir: str, game: str, model: str, temperature: float) -> str:
    safe_model = model.replace("/", "_").replace(":", "_")
    return os.path.join(out_dir, game, safe_model, str(temperature))


def cmd_matrix(args) -> int:
    try:
        with open(args.manifest, encoding="utf-8") as handle:
            manifest = json.load(handle)
    except (OSError, json.JSONDecodeError) as error:
        print(f"configuration error: cannot read manifest: {error}", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = args.out or manifest.get("output_dir", "results")
    n_games = manifest.get("n_games", 100)
    master_seed = manifest.get("master_seed", 0)
    options = manifest.get("options", {})
    transport_name = manifest.get("transport", args.transport)
    p2_spec = manifest.get("p2", "random")

    cells = list(_matrix_cells(manifest))

    def run_cell(cell):
        game, model, temperature = cell
        cell_dir = _cell_dir(out_dir, game, model, temperature)
        target = os.path.join(cell_dir, "results.json")
        if os.path.exists(target):
            return cell, load_results(target), True
        config = SeriesConfig(
            game_kind=game,
            p1=parse_player_spec(model),
            p2=parse_player_spec(p2_spec),
            n_games=n_games,
            master_seed=master_seed,
            temperature=temperature,
            options=options.get(game, {}),
        )
        transport = build_transport(transport_name, args.fixture)
        result = run_series(config, transport=transport)
        export_results(result, cell_dir)
        return cell, result, False

    try:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            outcomes = list(pool.map(run_cell, cells))
    except (ConfigError, ValueError) as error:
        print(f"configuration error: {error}", file=sys.stderr)
        return EXIT_CONFIG
    except TransportError as error:
        print(f"transport failure: {error}", file=sys.stderr)
        return EXIT_TRANSPORT

    games = manifest.get("games", list(DEFAULT_MATRIX_GAMES))
    for game in games:
        print(f"\n== {game} ==")
        print(f"{'Model':<24} {'Temp.':>5} {'Win Rate (%)':>12} {'Lose Rate (%)':>13}")
        for (cell_game, model, temperature), result, _resumed in outcomes:
            if cell_game != game:
                continue
            win = 100 * result.p1_wins / result.n_games
            lose = 100 * result.p2_wins / result.n_games
            print(f"{model:<24} {temperature:>5} {win:>12.2f} {lose:>13.2f}")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import SessionStore, make_server, serve_forever

    store = SessionStore(snapshot_path=args.store)
    transport = build_transport(args.transport, args.fixture)
    if args.static_dir is None and os.path.isdir(os.path.join("frontend", "dist")):
        args.static_dir = os.path.join("frontend", "dist")
    try:
        server = make_server(
            host=args.host,
            port=args.port,
            store=store,
            static_dir=args.static_dir,
            opponent_transport=transport,
        )
    except OSError as error:
        print(f"cannot bind port {args.port}: {error}", file=sys.stderr)
        return EXIT_PORT
    host, port = server.server_address[:2]
    print(f"listening on http://{host}:{port}", flush=True)
    serve_forever(server)
    return EXIT_OK


GAME_METRIC_LABEL = {
    "tictactoe": "win rate",
    "connectfour": "win rate",
    "battleship": "win rate",
    "shapes": "correct rate",
    "lcl_validity": "correct rate",
    "lcl_generation": "valid rate",
    "gts": "accuracy",
}


def cmd_report(args) -> int:
    rows = []
    for dirpath, _dirnames, filenames in os.walk(args.results):
        if "results.json" not in filenames:
            continue
        result = load_results(os.path.join(dirpath, "results.json"))
        relative = os.path.relpath(dirpath, args.results)
        parts = relative.split(os.sep)
        model = parts[1] if len(parts) >= 2 else "unknown"
        temperature = parts[2] if len(parts) >= 3 else ""
        rows.append((result.game_kind, model, temperature, result, dirpath))
    if not rows:
        print(f"no results under {args.results}", file=sys.stderr)
        return EXIT_EMPTY

    os.makedirs(args.out, exist_ok=True)

    # per (game, model): best score over temperatures
    best: dict = {}
    for game, model, temperature, result, _path in rows:
        score = 100 * result.p1_wins / result.n_games
        key = (model, game)
        if key not in best or score > best[key]:
            best[key] = score

    models = sorted({model for model, _ in best})
    games_present = sorted({game for _, game in best})
    summary_path = os.path.join(args.out, "combined.csv")
    with open(summary_path, "w", encoding="utf-8") as handle:
        header = ["model"] + games_present + ["combined"]
        handle.write(",".join(header) + "\n")
        for model in models:
            scores = {game: best.get((model, game)) for game in games_present}
            values = [f"{scores[game]:.2f}" if scores[game] is not None else "" for game in games_present]
            if len(games_present) == 7 and all(v != "" for v in values):
                overall = combined_score({game: best[(model, game)] for game in games_present})
                values.append(f"{overall:.2f}")
            else:
                values.append("")
            handle.write(",".join([model] + values) + "\n")
    print(f"wrote {summary_path}")

    for game, model, temperature, result, _path in rows:
        cell = os.path.join(args.out, game, model, str(temperature))
        export_plots(result, cell)
    print(f"wrote plots under {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="childplay", description="game benchmark harness"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one series")
    run.add_argument("--game", required=True, choices=GAME_KINDS)
    run.add_argument("--p1", default="random", help="random|minimax|human|llm:<model>")
    run.add_argument("--p2", default="random")
    run.add_argument("--n", type=int, default=100)
    run.add_argument("--temperature", type=float, default=None)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", default=None)
    run.add_argument("--transport", choices=("live", "fixture", "stub"), default="stub")
    run.add_argument("--fixture", default=None, help="transcript path for --transport fixture")
    run.add_argument("--max-retries", type=int, default=0)
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--plots", action="store_true")
    run.add_argument(
        "--option", action="append", metavar="KEY=VALUE", help="game option"
    )
    run.set_defaults(func=cmd_run)

    matrix = sub.add_parser("matrix", help="run a models x temperatures x games grid")
    matrix.add_argument("--manifest", required=True)
    matrix.add_argument("--out", default=None)
    matrix.add_argument("--transport", choices=("live", "fixture", "stub"), default="stub")
    matrix.add_argument("--fixture", default=None)
    matrix.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    matrix.set_defaults(func=cmd_matrix)

    serve = sub.add_parser("serve", help="serve the HTTP API and web client")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--static-dir", default=None)
    serve.add_argument("--store", default=None, help="session snapshot path")
    serve.add_argument("--transport", choices=("live", "fixture", "stub"), default="stub")
    serve.add_argument("--fixture", default=None)
    serve.set_defaults(func=cmd_serve)

    report = sub.add_parser("report", help="aggregate results and emit plots")
    report.add_argument("--results", required=True)
    report.add_argument("--out", default="report")
    report.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
