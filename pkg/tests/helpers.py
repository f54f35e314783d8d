"""Independent oracles used by the test suite.

Everything here is deliberately written against the specification of each
operation, not against the package's implementation, so the two can
disagree when one is wrong.
"""

from __future__ import annotations

import math

import networkx as nx

# --- tic-tac-toe ------------------------------------------------------------

TTT_LINES = (
    ((0, 0), (0, 1), (0, 2)),
    ((1, 0), (1, 1), (1, 2)),
    ((2, 0), (2, 1), (2, 2)),
    ((0, 0), (1, 0), (2, 0)),
    ((0, 1), (1, 1), (2, 1)),
    ((0, 2), (1, 2), (2, 2)),
    ((0, 0), (1, 1), (2, 2)),
    ((0, 2), (1, 1), (2, 0)),
)


def ttt_oracle_win(cells, mark: str) -> bool:
    """Explicit 8-line enumeration over a 3x3 cell grid."""
    return any(all(cells[r][c] == mark for r, c in line) for line in TTT_LINES)


def ttt_oracle_tie(cells) -> bool:
    if any(cells[r][c] == " " for r in range(3) for c in range(3)):
        return False
    return not ttt_oracle_win(cells, "X") and not ttt_oracle_win(cells, "O")


def all_ttt_grids():
    """All 3^9 assignments of blank/X/O."""
    symbols = (" ", "X", "O")
    for code in range(3**9):
        cells = [[" "] * 3 for _ in range(3)]
        value = code
        for index in range(9):
            cells[index // 3][index % 3] = symbols[value % 3]
            value //= 3
        yield cells


def ttt_random_play_win_probability() -> float:
    """Exact P1 win probability under uniform random play by both sides."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def recurse(board: tuple, x_to_move: bool) -> float:
        cells = [list(board[i * 3 : (i + 1) * 3]) for i in range(3)]
        empties = [i for i, ch in enumerate(board) if ch == " "]
        total = 0.0
        mark = "X" if x_to_move else "O"
        for index in empties:
            child = board[:index] + mark + board[index + 1 :]
            child_cells = [list(child[i * 3 : (i + 1) * 3]) for i in range(3)]
            if ttt_oracle_win(child_cells, mark):
                total += 1.0 if x_to_move else 0.0
            elif " " not in child:
                total += 0.0
            else:
                total += recurse(child, not x_to_move)
        return total / len(empties)

    return recurse(" " * 9, True)


def ttt_one_ply_wins(cells, mark: str) -> set:
    """All empty cells that complete a line for ``mark``."""
    wins = set()
    for r in range(3):
        for c in range(3):
            if cells[r][c] != " ":
                continue
            probe = [row[:] for row in cells]
            probe[r][c] = mark
            if ttt_oracle_win(probe, mark):
                wins.add((r, c))
    return wins


# --- connect-four -----------------------------------------------------------


def c4_oracle_any_win(cells, mark: str) -> bool:
    """Full-grid scan of every 4-window in all 4 directions."""
    rows, cols = len(cells), len(cells[0])
    for r in range(rows):
        for c in range(cols):
            for dr, dc in ((0, 1), (1, 0), (1, 1), (1, -1)):
                end_r, end_c = r + 3 * dr, c + 3 * dc
                if not (0 <= end_r < rows and 0 <= end_c < cols):
                    continue
                if all(cells[r + k * dr][c + k * dc] == mark for k in range(4)):
                    return True
    return False


def c4_oracle_landing(cells, col: int):
    for row in range(len(cells) - 1, -1, -1):
        if cells[row][col] == ".":
            return row
    return None


def c4_one_ply_wins(cells, mark: str) -> set:
    """Columns whose drop makes a 4-line for ``mark``."""
    wins = set()
    for col in range(len(cells[0])):
        row = c4_oracle_landing(cells, col)
        if row is None:
            continue
        probe = [r[:] for r in cells]
        probe[row][col] = mark
        if c4_oracle_any_win(probe, mark):
            wins.add(col)
    return wins


# --- battleship -------------------------------------------------------------


def battleship_audit(board, fleets) -> list:
    """Violations of the no-overlap / no-touch (8-neighborhood) constraints."""
    problems = []
    size = len(board)
    seen = set()
    for ship in fleets:
        for cell in ship:
            if cell in seen:
                problems.append(f"overlap at {cell}")
            seen.add(cell)
    for index, ship in enumerate(fleets):
        for r, c in ship:
            if board[r][c] not in ("S", "X"):
                problems.append(f"fleet cell ({r},{c}) not on board")
            for dr in (-1, 0, 1):
                for dc in (-1, 0, 1):
                    nr, nc = r + dr, c + dc
                    if not (0 <= nr < size and 0 <= nc < size):
                        continue
                    if (nr, nc) in seen and (nr, nc) not in ship:
                        problems.append(
                            f"ship {index} touches another ship at ({nr},{nc})"
                        )
    return problems


# --- shapes -----------------------------------------------------------------


def classify_shape_board(grid) -> str | None:
    """Template match over all placements/sizes of the three drawable shapes."""
    from childplay.games.shapes import (
        create_board,
        draw_cross,
        draw_rectangle,
        draw_triangle,
    )

    height, width = len(grid), len(grid[0])
    target = ["".join(row) for row in grid]

    def render(draw, *args):
        probe = create_board(height, width)
        try:
            draw(probe, *args)
        except ValueError:
            return None
        return ["".join(row) for row in probe]

    for side in range(3, min(height, width) + 1):
        for top in range(height - side + 1):
            for left in range(width - side + 1):
                if render(draw_rectangle, top, left, side, side) == target:
                    return "square"
    for h in range(3, min(height, (width + 1) // 2) + 1):
        for apex_row in range(height - h + 1):
            for apex_col in range(h - 1, width - h + 1):
                if render(draw_triangle, apex_row, apex_col, h) == target:
                    return "triangle"
    for arm in range(2, min((height - 1) // 2, (width - 1) // 2) + 1):
        for row in range(arm, height - arm):
            for col in range(arm, width - arm):
                if render(draw_cross, row, col, arm) == target:
                    return "cross"
    return None


def brute_force_circle_cells(radius: int) -> set:
    """Per-octant |sqrt(dx^2+dy^2) - r| minimization, reflected 8 ways."""
    cells = set()
    for dx in range(radius + 1):
        best_dy = min(
            range(radius + 1),
            key=lambda dy: abs(math.hypot(dx, dy) - radius),
        )
        if dx <= best_dy:
            for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                cells.add((sx * dx, sy * best_dy))
                cells.add((sx * best_dy, sy * dx))
    return cells


# --- brick constructs -------------------------------------------------------


def lcl_oracle_valid(pieces) -> tuple:
    """(valid, reason) via stud-column sets and union-find connectivity."""
    plist = [(p.x, p.y) for p in pieces]
    if not plist:
        return False, "empty"
    columns = [set(range(x, x + 4)) for x, _ in plist]
    n = len(plist)
    for i in range(n):
        for j in range(i + 1, n):
            if plist[i][1] == plist[j][1] and columns[i] & columns[j]:
                return False, "overlap"
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if abs(plist[i][1] - plist[j][1]) == 1 and columns[i] & columns[j]:
                parent[find(i)] = find(j)
    if len({find(i) for i in range(n)}) != 1:
        return False, "disconnected"
    return True, "ok"


# --- molecules --------------------------------------------------------------


def molecule_to_nx(elements, bonds) -> nx.Graph:
    graph = nx.Graph()
    for index, element in enumerate(elements):
        graph.add_node(index, element=element)
    for i, j, order in bonds:
        graph.add_edge(i, j, order=order)
    return graph


def molecules_isomorphic(a, b) -> bool:
    return nx.is_isomorphic(
        molecule_to_nx(a.elements, a.bonds),
        molecule_to_nx(b.elements, b.bonds),
        node_match=lambda x, y: x["element"] == y["element"],
        edge_match=lambda x, y: x["order"] == y["order"],
    )


def decode_depiction(text: str):
    """Grid-walking decoder: rebuild (elements, bonds) from a depiction.

    Atoms are letters; bonds are horizontal runs of -/= or vertical runs
    of |/: connecting two atom cells.
    """
    rows = text.splitlines()
    grid = {}
    for r, row in enumerate(rows):
        for c, ch in enumerate(row):
            if ch != " ":
                grid[(r, c)] = ch
    atom_cells = sorted(cell for cell, ch in grid.items() if ch.isalpha())
    index_of = {cell: i for i, cell in enumerate(atom_cells)}
    elements = [grid[cell] for cell in atom_cells]
    bonds = []
    for (r, c), start in index_of.items():
        # walk right
        col = c + 1
        run = []
        while (r, col) in grid and grid[(r, col)] in "-=":
            run.append(grid[(r, col)])
            col += 1
        if run:
            if (r, col) not in index_of:
                raise ValueError(f"horizontal run at ({r},{c}) ends nowhere")
            if len(set(run)) != 1:
                raise ValueError(f"mixed glyphs in run at ({r},{c})")
            order = 1 if run[0] == "-" else 2
            bonds.append((start, index_of[(r, col)], order))
        # walk down
        row = r + 1
        run = []
        while (row, c) in grid and grid[(row, c)] in "|:":
            run.append(grid[(row, c)])
            row += 1
        if run:
            if (row, c) not in index_of:
                raise ValueError(f"vertical run at ({r},{c}) ends nowhere")
            if len(set(run)) != 1:
                raise ValueError(f"mixed glyphs in run at ({r},{c})")
            order = 1 if run[0] == "|" else 2
            bonds.append((start, index_of[(row, c)], order))
    return elements, bonds


def depiction_matches_molecule(depiction_text: str, mol) -> bool:
    elements, bonds = decode_depiction(depiction_text)
    return nx.is_isomorphic(
        molecule_to_nx(elements, bonds),
        molecule_to_nx(mol.elements, mol.bonds),
        node_match=lambda x, y: x["element"] == y["element"],
        edge_match=lambda x, y: x["order"] == y["order"],
    )
