// Pure view helpers: grid geometry per game, click-to-move formatting, and
// status banners. Everything here derives from the latest server response;
// nothing decides legality.

import type { GameStatus, PuzzleScore } from "./api.js";

export type GridKind = "cells" | "columns" | "none";

export interface GridSpec {
  kind: GridKind;
  rows: number;
  cols: number;
}

// presentation constants: the clickable grid drawn next to the raw-text
// input; the server still validates every click
export function gridSpecFor(game: string): GridSpec {
  switch (game) {
    case "tictactoe":
      return { kind: "cells", rows: 3, cols: 3 };
    case "battleship":
      return { kind: "cells", rows: 5, cols: 5 };
    case "connectfour":
      return { kind: "columns", rows: 1, cols: 7 };
    default:
      return { kind: "none", rows: 0, cols: 0 };
  }
}

// a click becomes exactly the text an LLM would send
export function moveTextForClick(spec: GridSpec, row: number, col: number): string {
  if (spec.kind === "columns") {
    return String(col);
  }
  return `${row} ${col}`;
}

export function statusBanner(status: GameStatus): string {
  if (!status.over) {
    return "Your move.";
  }
  switch (status.termination) {
    case "forfeit":
      return status.winner === "P1"
        ? "Opponent made a wrong move - you win by forfeit."
        : "Wrong move - you lose.";
    case "tie":
      return "Tie game.";
    case "turn_limit":
      return "Turn limit reached - no winner.";
    default:
      return status.winner === "P1" ? "You win!" : "You lose.";
  }
}

export function scoreBanner(score: PuzzleScore): string {
  if (!score.valid) {
    return "Invalid SMILES (similarity -1). Try again.";
  }
  if (score.correct) {
    return "Correct! Similarity 1.0, string distance 0.";
  }
  return (
    `Not quite. Similarity ${score.chemical_similarity.toFixed(3)}, ` +
    `string distance ${score.string_distance}.`
  );
}

export function scoreTone(score: PuzzleScore): "good" | "warn" | "bad" {
  if (score.correct) return "good";
  return score.valid ? "warn" : "bad";
}
