// DOM wiring for the single-page client. View state derives solely from
// the latest server response; one request in flight per view.

import { ApiClient, ApiError, GameStatus } from "./api.js";
import {
  gridSpecFor,
  moveTextForClick,
  scoreBanner,
  scoreTone,
  statusBanner,
} from "./view.js";

const GAMES = ["tictactoe", "connectfour", "battleship", "shapes", "lcl_validity"];
const OPPONENTS = ["random", "minimax"];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text) node.textContent = text;
  return node;
}

class GamePanel {
  private gameId: string | null = null;
  private busy = false;
  private over = true;
  private currentGame = "tictactoe";

  private readonly gameSelect = el("select");
  private readonly opponentSelect = el("select");
  private readonly startButton = el("button", {}, "Start game");
  private readonly promptBox = el("details");
  private readonly board = el("pre", { class: "board" });
  private readonly banner = el("div", { class: "banner" });
  private readonly clickGrid = el("div", { class: "click-grid" });
  private readonly moveInput = el("input", {
    placeholder: "raw move, e.g. 1 1",
  }) as HTMLInputElement;
  private readonly sendButton = el("button", {}, "Send");
  private readonly lastOpponent = el("div", { class: "opponent-move" });

  constructor(private readonly api: ApiClient, root: HTMLElement) {
    for (const game of GAMES) {
      this.gameSelect.append(el("option", { value: game }, game));
    }
    for (const opponent of OPPONENTS) {
      this.opponentSelect.append(el("option", { value: opponent }, opponent));
    }
    const controls = el("div", { class: "controls" });
    controls.append(this.gameSelect, this.opponentSelect, this.startButton);
    const summary = el("summary", {}, "Rules prompt");
    this.promptBox.append(summary, el("p"));
    const entry = el("div", { class: "entry" });
    entry.append(this.moveInput, this.sendButton);
    root.append(
      controls,
      this.promptBox,
      this.banner,
      this.board,
      this.clickGrid,
      entry,
      this.lastOpponent,
    );

    this.startButton.addEventListener("click", () => void this.start());
    this.sendButton.addEventListener("click", () => void this.send(this.moveInput.value));
    this.moveInput.addEventListener("keydown", (event) => {
      if (event.key === "Enter") void this.send(this.moveInput.value);
    });
    this.setInputsEnabled(false);
  }

  private setInputsEnabled(enabled: boolean): void {
    this.moveInput.disabled = !enabled;
    this.sendButton.disabled = !enabled;
    for (const button of this.clickGrid.querySelectorAll("button")) {
      button.disabled = !enabled;
    }
  }

  private renderClickGrid(): void {
    this.clickGrid.textContent = "";
    const spec = gridSpecFor(this.currentGame);
    if (spec.kind === "none") return;
    for (let row = 0; row < spec.rows; row += 1) {
      const line = el("div", { class: "grid-row" });
      for (let col = 0; col < spec.cols; col += 1) {
        const label = spec.kind === "columns" ? String(col) : `${row},${col}`;
        const button = el("button", { class: "cell" }, label);
        button.addEventListener("click", () =>
          void this.send(moveTextForClick(spec, row, col)),
        );
        line.append(button);
      }
      this.clickGrid.append(line);
    }
  }

  private showStatus(state: string, status: GameStatus, opponentMove?: string): void {
    this.board.textContent = state;
    this.banner.textContent = statusBanner(status);
    this.banner.className = `banner ${status.over ? "over" : "live"}`;
    this.lastOpponent.textContent = opponentMove
      ? `Opponent played: ${opponentMove}`
      : "";
    this.over = status.over;
    this.setInputsEnabled(!status.over && !this.busy);
  }

  private toast(message: string): void {
    this.banner.textContent = message;
    this.banner.className = "banner error";
  }

  async start(): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.setInputsEnabled(false);
    try {
      this.currentGame = this.gameSelect.value;
      const started = await this.api.startGame(
        this.currentGame,
        this.opponentSelect.value,
      );
      this.gameId = started.id;
      (this.promptBox.querySelector("p") as HTMLElement).textContent = started.prompt;
      this.renderClickGrid();
      this.busy = false;
      this.showStatus(started.state, started.status);
      this.moveInput.value = "";
    } catch (error) {
      this.busy = false;
      this.toast(error instanceof ApiError ? error.message : String(error));
    }
  }

  async send(move: string): Promise<void> {
    if (this.busy || this.over || !this.gameId || !move.trim()) return;
    this.busy = true;
    this.setInputsEnabled(false);
    try {
      const reply = await this.api.submitMove(this.gameId, move.trim());
      this.busy = false;
      this.showStatus(reply.state, reply.status, reply.opponent_move);
      this.moveInput.value = "";
    } catch (error) {
      this.busy = false;
      if (error instanceof ApiError && error.status === 409) {
        this.setInputsEnabled(false);
        this.toast("Game is over - start a new one.");
      } else {
        this.setInputsEnabled(!this.over);
        this.toast(error instanceof ApiError ? error.message : String(error));
      }
    }
  }
}

class PuzzlePanel {
  private puzzleId: string | null = null;
  private busy = false;

  private readonly newButton = el("button", {}, "New molecule");
  private readonly depiction = el("pre", { class: "board" });
  private readonly input = el("input", {
    placeholder: "SMILES, e.g. CCO",
  }) as HTMLInputElement;
  private readonly submit = el("button", {}, "Submit");
  private readonly result = el("div", { class: "banner" });

  constructor(private readonly api: ApiClient, root: HTMLElement) {
    const entry = el("div", { class: "entry" });
    entry.append(this.input, this.submit);
    root.append(this.newButton, this.depiction, entry, this.result);
    this.newButton.addEventListener("click", () => void this.fresh());
    this.submit.addEventListener("click", () => void this.answer());
    this.input.addEventListener("keydown", (event) => {
      if (event.key === "Enter") void this.answer();
    });
    this.input.disabled = true;
    this.submit.disabled = true;
  }

  async fresh(): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    try {
      const puzzle = await this.api.newPuzzle();
      this.puzzleId = puzzle.id;
      this.depiction.textContent = puzzle.ascii;
      this.result.textContent = "";
      this.result.className = "banner";
      this.input.value = "";
      this.input.disabled = false;
      this.submit.disabled = false;
    } catch (error) {
      this.result.textContent =
        error instanceof ApiError ? error.message : String(error);
      this.result.className = "banner error";
    } finally {
      this.busy = false;
    }
  }

  async answer(): Promise<void> {
    if (this.busy || !this.puzzleId || !this.input.value.trim()) return;
    this.busy = true;
    this.submit.disabled = true;
    try {
      const score = await this.api.evaluatePuzzle(
        this.puzzleId,
        this.input.value.trim(),
      );
      this.result.textContent = scoreBanner(score);
      this.result.className = `banner ${scoreTone(score)}`;
    } catch (error) {
      this.result.textContent =
        error instanceof ApiError ? error.message : String(error);
      this.result.className = "banner error";
    } finally {
      this.busy = false;
      this.submit.disabled = false;
    }
  }
}

export function mountApp(root: HTMLElement, api = new ApiClient()): void {
  const gameSection = el("section");
  gameSection.append(el("h2", {}, "Play a game"));
  const gameRoot = el("div");
  gameSection.append(gameRoot);

  const puzzleSection = el("section");
  puzzleSection.append(el("h2", {}, "Guess the molecule"));
  const puzzleRoot = el("div");
  puzzleSection.append(puzzleRoot);

  root.append(gameSection, puzzleSection);
  new GamePanel(api, gameRoot);
  new PuzzlePanel(api, puzzleRoot);
}
