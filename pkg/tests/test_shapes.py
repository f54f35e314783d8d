import math
import random

import pytest
from helpers import brute_force_circle_cells, classify_shape_board

from childplay.core import MoveOutcome, PlayerId, Termination, new_session
from childplay.games.shapes import (
    create_board,
    draw_circle,
    draw_cross,
    draw_rectangle,
    draw_triangle,
    judge_shape_answer,
    play_shape_round,
)


def ones(grid):
    return sum(row.count("1") for row in grid)


def test_create_board_sizes():
    assert ones(create_board(15, 15)) == 0
    assert len(create_board(15, 15)) == 15
    assert ones(create_board(5, 5)) == 0
    with pytest.raises(ValueError):
        create_board(4, 4)


def test_rectangle_fill_counts():
    grid = create_board(10, 10)
    draw_rectangle(grid, 2, 3, 3, 3)
    assert ones(grid) == 9
    grid = create_board(10, 10)
    draw_rectangle(grid, 0, 0, 1, 4)
    assert ones(grid) == 4
    assert "".join(grid[0][:4]) == "1111"


def test_rectangle_out_of_bounds():
    with pytest.raises(ValueError):
        draw_rectangle(create_board(5, 5), 3, 3, 3, 3)


def test_circle_radius_zero_single_cell():
    grid = create_board(7, 7)
    draw_circle(grid, 3, 3, 0)
    assert ones(grid) == 1
    assert grid[3][3] == "1"


def test_circle_matches_brute_force_oracle_r3():
    grid = create_board(9, 9)
    draw_circle(grid, 4, 4, 3)
    drawn = {
        (r - 4, c - 4)
        for r in range(9)
        for c in range(9)
        if grid[r][c] == "1"
    }
    assert drawn == brute_force_circle_cells(3)


def test_circle_eight_fold_symmetry():
    grid = create_board(11, 11)
    draw_circle(grid, 5, 5, 4)
    cells = {
        (r - 5, c - 5) for r in range(11) for c in range(11) if grid[r][c] == "1"
    }
    for dr, dc in list(cells):
        assert (dc, dr) in cells
        assert (-dr, dc) in cells
        assert (dr, -dc) in cells


def test_triangle_row_widths_and_total():
    grid = create_board(12, 12)
    draw_triangle(grid, 1, 5, 4)
    widths = [row.count("1") for row in grid if "1" in "".join(row)]
    assert widths == [1, 3, 5, 7]  # base of 7 at height 4
    assert ones(grid) == 16  # height squared


def test_triangle_single_cell():
    grid = create_board(6, 6)
    draw_triangle(grid, 2, 3, 1)
    assert ones(grid) == 1


def test_cross_counts():
    grid = create_board(9, 9)
    draw_cross(grid, 4, 4, 2)
    assert ones(grid) == 9  # 4*arm + 1
    assert grid[4][4] == "1"
    grid = create_board(6, 6)
    draw_cross(grid, 3, 3, 0)
    assert ones(grid) == 1


def test_ones_count_formulas_random_draws():
    rng = random.Random(123)
    for _ in range(1000):
        grid = create_board(15, 15)
        kind = rng.choice(("square", "triangle", "cross"))
        if kind == "square":
            side = rng.randint(3, 7)
            draw_rectangle(grid, rng.randint(0, 8), rng.randint(0, 8), side, side)
            assert ones(grid) == side * side
        elif kind == "triangle":
            h = rng.randint(3, 7)
            draw_triangle(grid, rng.randint(0, 15 - h), rng.randint(h - 1, 15 - h), h)
            assert ones(grid) == h * h
        else:
            arm = rng.randint(2, 6)
            draw_cross(grid, rng.randint(arm, 14 - arm), rng.randint(arm, 14 - arm), arm)
            assert ones(grid) == 4 * arm + 1


def test_round_distribution_and_no_circles():
    rng = random.Random(2024)
    counts = {"square": 0, "triangle": 0, "cross": 0, "circle": 0}
    n = 10_000
    for _ in range(n):
        board, _ = play_shape_round(rng)
        counts[board.shape] += 1
        assert board.grid  # at least one cell drawn
        assert any("1" in "".join(row) for row in board.grid)
        assert sorted(board.answer_options) == ["circle", "cross", "square", "triangle"]
    assert counts["circle"] == 0
    expected = n / 3
    sigma = math.sqrt(n * (1 / 3) * (2 / 3))
    for kind in ("square", "triangle", "cross"):
        assert abs(counts[kind] - expected) <= 3 * sigma


def test_template_classifier_recovers_shape():
    rng = random.Random(55)
    for _ in range(200):
        board, _ = play_shape_round(rng)
        assert classify_shape_board(board.grid) == board.shape


def test_judge_answers():
    rng = random.Random(1)
    board, _ = play_shape_round(rng)
    assert judge_shape_answer(board, board.shape.capitalize()) == "correct"
    wrong = next(k for k in ("square", "triangle", "cross") if k != board.shape)
    assert judge_shape_answer(board, f"It is a {wrong}") == "incorrect"
    assert judge_shape_answer(board, "triangle or cross") == "unparsable"
    assert judge_shape_answer(board, "no idea") == "unparsable"


def test_rectangle_synonym_for_square():
    rng = random.Random(4)
    while True:
        board, _ = play_shape_round(rng)
        if board.shape == "square":
            break
    assert judge_shape_answer(board, "a rectangle") == "correct"
    assert judge_shape_answer(board, "square, i.e. a rectangle") == "correct"


def test_round_is_single_shot():
    session = new_session("shapes", {}, seed=11)
    answer = session.engine.board.shape
    outcome = session.apply_move(PlayerId.P1, answer)
    assert outcome is MoveOutcome.WIN
    assert session.status.over


def test_wrong_answer_loses_without_forfeit():
    session = new_session("shapes", {}, seed=12)
    wrong = next(
        k for k in ("square", "triangle", "cross") if k != session.engine.board.shape
    )
    outcome = session.apply_move(PlayerId.P1, wrong)
    assert outcome is MoveOutcome.ACCEPTED
    assert session.status.winner is PlayerId.P2
    assert session.status.termination is Termination.WIN


def test_unparsable_answer_forfeits():
    session = new_session("shapes", {}, seed=13)
    outcome = session.apply_move(PlayerId.P1, "hmm, interesting")
    assert outcome is MoveOutcome.WRONG_MOVE
    assert session.status.termination is Termination.FORFEIT


def test_state_render_format():
    session = new_session("shapes", {}, seed=14)
    text = session.text_state(PlayerId.P1)
    lines = text.splitlines()
    assert len(lines) == 16  # 15 board rows + options
    assert all(set(line) <= {"0", "1"} for line in lines[:15])
    assert lines[15].startswith("A) ")
    for letter in ("B)", "C)", "D)"):
        assert letter in lines[15]
