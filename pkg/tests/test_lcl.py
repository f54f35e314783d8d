import itertools
import random

import pytest
from helpers import lcl_oracle_valid
from hypothesis import given, settings
from hypothesis import strategies as st

from childplay.lcl import (
    LclConstruct,
    LclParseError,
    Piece,
    count_attachments,
    count_attachments_recursive,
    enumerate_center_pairs,
    generate_invalid_construct,
    generate_valid_construct,
    is_valid_construct,
    parse_construct,
    pieces_connected,
    pieces_overlap,
    render_construct_svg,
    run_lcl_generation_benchmark,
    run_lcl_validity_benchmark,
)


def construct(*coords):
    return LclConstruct([Piece(x, y) for x, y in coords])


# --- predicates -------------------------------------------------------------


def test_overlap_same_layer_intersecting():
    assert pieces_overlap(Piece(0, 0), Piece(2, 0))


def test_no_overlap_side_by_side():
    assert not pieces_overlap(Piece(0, 0), Piece(4, 0))


def test_no_overlap_across_layers():
    assert not pieces_overlap(Piece(0, 0), Piece(0, 1))


def test_connected_interlocking():
    assert pieces_connected(Piece(0, 0), Piece(2, 1))


def test_not_connected_without_shared_column():
    assert not pieces_connected(Piece(0, 0), Piece(4, 1))


def test_not_connected_side_touching():
    assert not pieces_connected(Piece(0, 0), Piece(4, 0))


@given(
    st.integers(-8, 8), st.integers(0, 4), st.integers(-8, 8), st.integers(0, 4)
)
def test_predicates_are_symmetric(x1, y1, x2, y2):
    a, b = Piece(x1, y1), Piece(x2, y2)
    assert pieces_overlap(a, b) == pieces_overlap(b, a)
    assert pieces_connected(a, b) == pieces_connected(b, a)


# --- validity ---------------------------------------------------------------


def test_valid_three_piece_line():
    verdict = is_valid_construct(construct((0, 0), (4, 0), (2, 1)))
    assert verdict.valid and verdict.reason == "ok"


def test_disconnected_row():
    verdict = is_valid_construct(construct((0, 0), (4, 0), (8, 0)))
    assert not verdict.valid and verdict.reason == "disconnected"


def test_overlapping_pieces():
    verdict = is_valid_construct(construct((1, 1), (2, 1), (3, 1)))
    assert not verdict.valid and verdict.reason == "overlap"


def test_empty_and_single():
    assert is_valid_construct(LclConstruct([])).reason == "empty"
    assert is_valid_construct(construct((0, 0))).valid


def test_more_published_examples():
    assert is_valid_construct(construct((0, 0), (-2, 1), (2, 1))).valid
    assert is_valid_construct(construct((0, 0), (2, 1), (4, 2))).valid
    # shares no stud column with the rest: invalid under the written rules
    assert not is_valid_construct(construct((0, 0), (-2, 1), (4, 1))).valid


def test_checker_equals_oracle_exhaustively_small():
    """Every construct of <= 3 pieces over a compact coordinate window."""
    positions = [(x, y) for x in range(-4, 5) for y in range(3)]
    for size in (1, 2, 3):
        for combo in itertools.combinations(positions, size):
            c = construct(*combo)
            expected_valid, expected_reason = lcl_oracle_valid(c.pieces)
            verdict = is_valid_construct(c)
            assert verdict.valid == expected_valid
            assert verdict.reason == expected_reason


# --- generation -------------------------------------------------------------


def test_generate_single_piece_is_anchor():
    c = generate_valid_construct(1, random.Random(0))
    assert [(p.x, p.y) for p in c.pieces] == [(0, 0)]


def test_generated_constructs_all_valid():
    rng = random.Random(42)
    for _ in range(1000):
        c = generate_valid_construct(3, rng)
        assert is_valid_construct(c).valid


def test_second_piece_offsets():
    rng = random.Random(7)
    offsets = set()
    for _ in range(2000):
        c = generate_valid_construct(2, rng)
        second = c.pieces[1]
        assert second.y == 1
        offsets.add(second.x)
    assert offsets == set(range(-3, 4))


def test_layer_order_nondecreasing():
    rng = random.Random(3)
    for _ in range(200):
        c = generate_valid_construct(6, rng)
        layers = [p.y for p in c.pieces]
        assert all(a <= b for a, b in zip(layers, layers[1:]))
        assert c.pieces[0].x == 0 and c.pieces[0].y == 0


def test_generated_invalid_constructs_all_fail():
    rng = random.Random(11)
    for _ in range(1000):
        c = generate_invalid_construct(4, rng)
        verdict = is_valid_construct(c)
        assert not verdict.valid
        assert c.mutation in ("overlap", "detach")
        if c.mutation == "overlap":
            assert verdict.reason == "overlap"
        else:
            assert verdict.reason == "disconnected"


def test_invalid_needs_two_pieces():
    with pytest.raises(ValueError):
        generate_invalid_construct(1, random.Random(0))


# --- counting ---------------------------------------------------------------


def test_attachment_formula_values():
    assert count_attachments(0) == 0
    assert count_attachments(2) == 4
    assert count_attachments(4) == 24


def test_closed_form_equals_recurrence():
    for s in range(21):
        assert count_attachments(s) == count_attachments_recursive(s)


def test_negative_stud_count_rejected():
    with pytest.raises(ValueError):
        count_attachments(-1)


def test_center_pair_enumeration():
    assert enumerate_center_pairs() == 24
    assert enumerate_center_pairs(ordered=False) == 12
    assert enumerate_center_pairs() == count_attachments(4)


def test_single_attachment_positions_per_side():
    center = Piece(0, 0)
    spots = [x for x in range(-3, 4) if pieces_connected(Piece(x, 1), center)]
    assert len(spots) == 7


# --- parsing ----------------------------------------------------------------


def test_parse_bracket_list():
    c = parse_construct("[(1, 1, 'red'), (2, 1, 'blue'), (3, 1, 'green')]")
    assert len(c) == 3
    assert c.pieces[0] == Piece(1, 1, "red")


def test_parse_single_piece_double_parens():
    c = parse_construct("((0,0,'red'))")
    assert len(c) == 1


def test_parse_garbage():
    with pytest.raises(LclParseError):
        parse_construct("hello")


def test_parse_error_carries_offset():
    try:
        parse_construct("((0, 0, 'red'), oops)")
    except LclParseError as error:
        assert error.offset == 16
    else:
        raise AssertionError("expected a parse error")


def test_parse_tolerates_whitespace_and_trailing_period():
    c = parse_construct("  ( ( -2 , 1 , 'blue' ) , (4, 0, \"red\") ) .  ")
    assert [(p.x, p.y, p.color) for p in c.pieces] == [(-2, 1, "blue"), (4, 0, "red")]


def test_parse_round_trips_wire_format():
    rng = random.Random(77)
    for _ in range(100):
        c = generate_valid_construct(rng.randint(1, 6), rng)
        again = parse_construct(c.wire_format())
        assert again.pieces == c.pieces


@given(st.text(max_size=40))
@settings(max_examples=300)
def test_parser_total_no_crash(text):
    try:
        parse_construct(text)
    except LclParseError:
        pass


# --- rendering --------------------------------------------------------------


def test_svg_single_piece():
    svg = render_construct_svg(construct((0, 0)))
    assert svg.count("<rect") == 5  # body + 4 studs
    assert svg.startswith("<svg")


def test_svg_tower_stacks_three():
    tower = construct((0, 0), (0, 1), (0, 2))
    svg = render_construct_svg(tower)
    assert svg.count("<rect") == 15


def test_svg_deterministic():
    c = generate_valid_construct(4, random.Random(5))
    assert render_construct_svg(c) == render_construct_svg(c)


# --- benchmark protocols ----------------------------------------------------


def test_validity_benchmark_oracle_player_scores_100():
    def oracle(prompt: str) -> str:
        payload = prompt.rsplit(": ", 1)[1]
        return "valid" if is_valid_construct(parse_construct(payload)).valid else "invalid"

    result = run_lcl_validity_benchmark(oracle, 200, random.Random(9))
    assert result.correct == 200
    assert result.proportion == 1.0


def test_validity_benchmark_always_valid_player_scores_half():
    result = run_lcl_validity_benchmark(lambda _: "valid", 400, random.Random(10))
    assert result.correct == 200
    assert result.incorrect == 200


def test_validity_benchmark_random_player_near_half():
    rng = random.Random(12)
    player_rng = random.Random(13)
    result = run_lcl_validity_benchmark(
        lambda _: player_rng.choice(["valid", "invalid"]), 800, rng
    )
    assert abs(result.proportion - 0.5) <= 0.053  # 3 sigma for n=800
    assert result.unparsable == 0


def test_validity_benchmark_unparsable_tally():
    result = run_lcl_validity_benchmark(lambda _: "no comment", 10, random.Random(1))
    assert result.unparsable == 10
    assert result.proportion == 0.0


def test_validity_benchmark_requires_even_count():
    with pytest.raises(ValueError):
        run_lcl_validity_benchmark(lambda _: "valid", 3, random.Random(0))


def test_generation_benchmark_oracle_player():
    rng = random.Random(14)

    def oracle(prompt: str) -> str:
        return generate_valid_construct(3, rng).wire_format()

    result = run_lcl_generation_benchmark(oracle, 50, 3)
    assert result.correct == 50


def test_generation_benchmark_scores_invalid_and_unparsable():
    replies = iter(["[(0,0,'red'),(8,0,'red')]", "", "((0,0,'red'),(2,1,'blue'))"])
    result = run_lcl_generation_benchmark(lambda _: next(replies), 3, 2)
    assert result.incorrect == 1  # disconnected
    assert result.unparsable == 1  # empty reply
    assert result.correct == 1


def test_benchmark_rows_schema():
    result = run_lcl_validity_benchmark(
        lambda _: "valid", 4, random.Random(2), model="stub-model", temperature=0.5
    )
    row = result.rows[0]
    assert set(row) == {
        "temperature",
        "model",
        "experiment_no",
        "expected_validity",
        "answer",
        "correct",
    }
    assert row["model"] == "stub-model"
