// Typed client for the game service. The server is the single source of
// truth: this module only moves JSON, it never computes legality or scores.

export interface GameStatus {
  over: boolean;
  winner: "P1" | "P2" | null;
  termination: "win" | "tie" | "forfeit" | "turn_limit" | null;
}

export interface NewGameResponse {
  id: string;
  prompt: string;
  state: string;
  status: GameStatus;
}

export interface MoveResponse {
  state: string;
  status: GameStatus;
  opponent_move?: string;
}

export interface PuzzleResponse {
  id: string;
  ascii: string;
}

export interface PuzzleScore {
  correct: boolean;
  valid: boolean;
  chemical_similarity: number;
  string_distance: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function post<T>(path: string, body: unknown): Promise<T> {
  const response = await fetch(path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await response.json().catch(() => ({}));
  if (!response.ok) {
    const message =
      typeof payload === "object" && payload !== null && "error" in payload
        ? String((payload as { error: unknown }).error)
        : `HTTP ${response.status}`;
    throw new ApiError(response.status, message);
  }
  return payload as T;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  startGame(game: string, opponent: string, seed?: number): Promise<NewGameResponse> {
    const body: Record<string, unknown> = { game, opponent };
    if (seed !== undefined) body.seed = seed;
    return post<NewGameResponse>(`${this.base}/api/games`, body);
  }

  submitMove(gameId: string, move: string): Promise<MoveResponse> {
    return post<MoveResponse>(`${this.base}/api/games/${gameId}/moves`, { move });
  }

  newPuzzle(seed?: number): Promise<PuzzleResponse> {
    const body: Record<string, unknown> = {};
    if (seed !== undefined) body.seed = seed;
    return post<PuzzleResponse>(`${this.base}/api/gts/new`, body);
  }

  evaluatePuzzle(puzzleId: string, smiles: string): Promise<PuzzleScore> {
    return post<PuzzleScore>(`${this.base}/api/gts/evaluate`, {
      id: puzzleId,
      smiles,
    });
  }
}
