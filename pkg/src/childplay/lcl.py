"""Brick construct language: piece algebra, validity, generation, counting.

Pieces are 2x4 bricks addressed by their leftmost stud column ``x`` and
layer ``y``; a piece occupies stud columns [x, x+3].  Two pieces overlap
when they share a layer and any stud column; they interlock when they sit
on adjacent layers and share at least one stud column.  A construct is
valid iff no two pieces overlap and the interlock graph is connected.
A single piece is vacuously valid; the empty construct is not.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

VALID_COLORS = ("red", "blue", "green", "yellow", "white", "black")
PIECE_LENGTH = 4  # stud columns per piece; width 2 and height 1 are implicit


@dataclass(frozen=True)
class Piece:
    x: int
    y: int
    color: str = "red"

    @property
    def columns(self) -> range:
        return range(self.x, self.x + PIECE_LENGTH)


@dataclass
class LclConstruct:
    pieces: list = field(default_factory=list)
    mutation: Optional[str] = None  # set by generate_invalid_construct

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self):
        return len(self.pieces)

    def wire_format(self) -> str:
        """The tuple-list syntax used on prompts: ((x1, y1, 'c1'), ...)."""
        inner = ", ".join(f"({p.x}, {p.y}, '{p.color}')" for p in self.pieces)
        return f"({inner})"


@dataclass(frozen=True)
class LclVerdict:
    valid: bool
    reason: str  # ok | overlap | disconnected | empty


def _columns_intersect(a: Piece, b: Piece) -> bool:
    return a.x <= b.x + PIECE_LENGTH - 1 and b.x <= a.x + PIECE_LENGTH - 1


def pieces_overlap(a: Piece, b: Piece) -> bool:
    """Same layer and any shared stud column."""
    return a.y == b.y and _columns_intersect(a, b)


def pieces_connected(a: Piece, b: Piece) -> bool:
    """Adjacent layers and at least one shared stud column (interlock)."""
    return abs(a.y - b.y) == 1 and _columns_intersect(a, b)


def is_valid_construct(construct) -> LclVerdict:
    """Judge a construct: empty, any overlap, or a disconnected interlock graph."""
    pieces = list(construct)
    if not pieces:
        return LclVerdict(False, "empty")
    n = len(pieces)
    for i in range(n):
        for j in range(i + 1, n):
            if pieces_overlap(pieces[i], pieces[j]):
                return LclVerdict(False, "overlap")
    seen = {0}
    frontier = deque([0])
    while frontier:
        i = frontier.popleft()
        for j in range(n):
            if j not in seen and pieces_connected(pieces[i], pieces[j]):
                seen.add(j)
                frontier.append(j)
    if len(seen) != n:
        return LclVerdict(False, "disconnected")
    return LclVerdict(True, "ok")


def _growth_positions(pieces: list) -> list:
    """All (x, y) placements that interlock with the assembly without
    overlap, restricted to the top layer and the layer above it so pieces
    are always added in nondecreasing layer order."""
    max_y = max(p.y for p in pieces)
    candidates = set()
    for y in (max_y, max_y + 1):
        below = [p for p in pieces if p.y == y - 1]
        same = [p for p in pieces if p.y == y]
        above = [p for p in pieces if p.y == y + 1]
        anchors = below + above
        for anchor in anchors:
            for x in range(anchor.x - PIECE_LENGTH + 1, anchor.x + PIECE_LENGTH):
                probe = Piece(x, y)
                if any(pieces_overlap(probe, p) for p in same):
                    continue
                candidates.add((x, y))
    return sorted(candidates)


def generate_valid_construct(n: int, rng: random.Random) -> LclConstruct:
    """Random valid construct of ``n`` pieces, anchored at (0, 0) and built
    layer by layer; each new piece is uniform over all growth positions."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pieces = [Piece(0, 0, rng.choice(VALID_COLORS))]
    while len(pieces) < n:
        x, y = rng.choice(_growth_positions(pieces))
        pieces.append(Piece(x, y, rng.choice(VALID_COLORS)))
    return LclConstruct(pieces)


def generate_invalid_construct(n: int, rng: random.Random) -> LclConstruct:
    """Break a valid construct with one mutation: overlap or detach.

    The mutation kind is recorded on the returned construct.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    base = generate_valid_construct(n, rng)
    pieces = list(base.pieces)
    mutation = rng.choice(("overlap", "detach"))
    i = rng.randrange(len(pieces))
    victim = pieces[i]
    if mutation == "overlap":
        others = [j for j in range(len(pieces)) if j != i]
        target = pieces[rng.choice(others)]
        offset = rng.randint(-(PIECE_LENGTH - 1), PIECE_LENGTH - 1)
        pieces[i] = Piece(target.x + offset, target.y, victim.color)
    else:
        far_x = max(p.x for p in pieces) + PIECE_LENGTH + rng.randint(1, 5)
        pieces[i] = Piece(far_x, victim.y, victim.color)
    return LclConstruct(pieces, mutation=mutation)


def count_attachments(s: int) -> int:
    """Closed form 2(s-1)s for the number of two-piece same-side attachments
    around a center piece with ``s`` studs; 0 for s = 0."""
    if s < 0:
        raise ValueError("stud count must be non-negative")
    return 2 * (s - 1) * s


def count_attachments_recursive(s: int) -> int:
    """Recurrence f(s) = 4(s-1) + f(s-1), f(0) = 0; equals the closed form."""
    if s < 0:
        raise ValueError("stud count must be non-negative")
    total = 0
    for k in range(1, s + 1):
        total += 4 * (k - 1)
    return total


def enumerate_center_pairs(ordered: bool = True) -> int:
    """Brute-force count of placements of two pieces on the same side (both
    above or both below) of a center piece at (0, 0), each interlocking with
    the center and mutually non-overlapping.

    ``ordered`` counts labeled placements (the default, 24); unordered
    halves that by symmetry (12).
    """
    center = Piece(0, 0)
    total = 0
    for y in (1, -1):
        for x1 in range(-(PIECE_LENGTH - 1), PIECE_LENGTH):
            for x2 in range(-(PIECE_LENGTH - 1), PIECE_LENGTH):
                if x1 == x2:
                    continue
                a, b = Piece(x1, y), Piece(x2, y)
                if not (pieces_connected(a, center) and pieces_connected(b, center)):
                    continue
                if pieces_overlap(a, b):
                    continue
                total += 1
    return total if ordered else total // 2


class LclParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<open>[\(\[])
      | (?P<close>[\)\]])
      | (?P<comma>,)
      | (?P<int>-?\d+)
      | (?P<str>'[^']*'|"[^"]*")
      | (?P<dot>\.)
    )""",
    re.VERBOSE,
)


def _tokenize(raw: str):
    tokens = []
    pos = 0
    while pos < len(raw):
        match = _TOKEN_RE.match(raw, pos)
        if match is None:
            while pos < len(raw) and raw[pos].isspace():
                pos += 1
            if pos == len(raw):
                break
            raise LclParseError(f"unexpected character {raw[pos]!r}", pos)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


def parse_construct(raw: str) -> LclConstruct:
    """Parse the tuple-list wire syntax into a construct.

    Accepts ( ) or [ ] delimiters, integer coordinates, quoted colors,
    arbitrary whitespace, and one trailing period.  Anything else raises
    :class:`LclParseError` with the character offset.
    """
    tokens = _tokenize(raw)
    if tokens and tokens[-1][0] == "dot":
        tokens = tokens[:-1]
    if not tokens:
        raise LclParseError("empty construct text", 0)

    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", "", len(raw))

    def take(kind):
        nonlocal pos
        token = peek()
        if token[0] != kind:
            raise LclParseError(f"expected {kind}, found {token[1]!r}", token[2])
        pos += 1
        return token

    def parse_piece() -> Piece:
        take("open")
        x = int(take("int")[1])
        take("comma")
        y = int(take("int")[1])
        take("comma")
        color = take("str")[1][1:-1]
        take("close")
        return Piece(x, y, color)

    take("open")
    pieces = []
    # single-piece shorthand: the outer parens double as the tuple's own
    if peek()[0] == "int":
        x = int(take("int")[1])
        take("comma")
        y = int(take("int")[1])
        take("comma")
        color = take("str")[1][1:-1]
        take("close")
        pieces.append(Piece(x, y, color))
    else:
        pieces.append(parse_piece())
        while peek()[0] == "comma":
            take("comma")
            if peek()[0] == "close":
                break
            pieces.append(parse_piece())
        take("close")
    if pos != len(tokens):
        raise LclParseError(f"trailing input {peek()[1]!r}", peek()[2])
    return LclConstruct(pieces)


SVG_UNIT = 16  # pixels per stud column; one layer is 2 units tall


def render_construct_svg(construct) -> str:
    """Deterministic SVG: a 4x1-unit rectangle plus 4 stud nubs per piece."""
    pieces = list(construct)
    if pieces:
        min_x = min(p.x for p in pieces)
        max_x = max(p.x for p in pieces) + PIECE_LENGTH
        max_y = max(p.y for p in pieces)
    else:
        min_x, max_x, max_y = 0, 1, 0
    brick_h = 2 * SVG_UNIT
    stud_h = SVG_UNIT // 2
    width = (max_x - min_x) * SVG_UNIT
    height = (max_y + 1) * brick_h + stud_h
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    for p in pieces:
        px = (p.x - min_x) * SVG_UNIT
        py = (max_y - p.y) * brick_h + stud_h
        parts.append(
            f'<rect x="{px}" y="{py}" width="{PIECE_LENGTH * SVG_UNIT}" '
            f'height="{brick_h}" fill="{p.color}" stroke="black"/>'
        )
        for stud in range(PIECE_LENGTH):
            sx = px + stud * SVG_UNIT + SVG_UNIT // 4
            parts.append(
                f'<rect x="{sx}" y="{py - stud_h}" width="{SVG_UNIT // 2}" '
                f'height="{stud_h}" fill="{p.color}" stroke="black"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts)


def extract_validity_answer(raw: str) -> Optional[bool]:
    """Whole-word 'valid'/'invalid' from a reply; None when absent or both."""
    words = set(re.findall(r"[a-zA-Z]+", raw.lower()))
    has_valid = "valid" in words
    has_invalid = "invalid" in words
    if has_valid == has_invalid:
        return None
    return has_valid


@dataclass
class LclBenchmarkResult:
    correct: int = 0
    incorrect: int = 0
    unparsable: int = 0
    rows: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.correct + self.incorrect + self.unparsable

    @property
    def proportion(self) -> float:
        return self.correct / self.total if self.total else 0.0

    @property
    def se_percent(self) -> float:
        from .harness import binomial_stats

        return binomial_stats(self.correct, self.total).se


def run_lcl_validity_benchmark(
    player,
    count: int,
    rng: random.Random,
    model: str = "",
    temperature: Optional[float] = None,
) -> LclBenchmarkResult:
    """Balanced validity protocol: count/2 valid + count/2 invalid constructs,
    shuffled, one prompt each; answers judged by whole-word valid/invalid.

    ``player`` is a callable prompt -> reply text.
    """
    from .prompts import load_template, substitute

    if count % 2 != 0:
        raise ValueError("count must be even (balanced valid/invalid split)")
    template = load_template("lcl_validity")
    tasks = []
    for _ in range(count // 2):
        n = rng.randint(2, 6)
        tasks.append((generate_valid_construct(n, rng), True))
    for _ in range(count // 2):
        n = rng.randint(2, 6)
        tasks.append((generate_invalid_construct(n, rng), False))
    rng.shuffle(tasks)

    result = LclBenchmarkResult()
    for experiment_no, (construct, expected_valid) in enumerate(tasks):
        prompt = substitute(template, pieces=construct.wire_format())
        reply = player(prompt)
        answer = extract_validity_answer(reply)
        if answer is None:
            result.unparsable += 1
            verdict = "unparsable"
        elif answer == expected_valid:
            result.correct += 1
            verdict = "correct"
        else:
            result.incorrect += 1
            verdict = "incorrect"
        result.rows.append(
            {
                "temperature": temperature,
                "model": model,
                "experiment_no": experiment_no,
                "expected_validity": "valid" if expected_valid else "invalid",
                "answer": reply,
                "correct": verdict == "correct",
            }
        )
    return result


def run_lcl_generation_benchmark(
    player,
    count: int,
    n_pieces: int,
    rng: random.Random = None,
    model: str = "",
    temperature: Optional[float] = None,
) -> LclBenchmarkResult:
    """Construct generation protocol: ask for ``n_pieces``-piece constructs
    ``count`` times; score replies valid / invalid / unparsable.

    The prompt is constant for a fixed ``n_pieces``; ``rng`` is accepted for
    interface parity but unused.
    """
    from .prompts import load_template, substitute

    if count < 1:
        raise ValueError("count must be >= 1")
    prompt = substitute(load_template("lcl_generation"), n_pieces=n_pieces)
    result = LclBenchmarkResult()
    for experiment_no in range(count):
        reply = player(prompt)
        try:
            construct = parse_construct(reply.strip())
        except LclParseError:
            result.unparsable += 1
            verdict = "unparsable"
        else:
            if is_valid_construct(construct).valid:
                result.correct += 1
                verdict = "correct"
            else:
                result.incorrect += 1
                verdict = "incorrect"
        result.rows.append(
            {
                "temperature": temperature,
                "model": model,
                "experiment_no": experiment_no,
                "expected_validity": "valid",
                "answer": reply,
                "correct": verdict == "correct",
            }
        )
    return result


def write_benchmark_csv(result: LclBenchmarkResult, path) -> None:
    import csv

    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(
            handle,
            fieldnames=[
                "temperature",
                "model",
                "experiment_no",
                "expected_validity",
                "answer",
                "correct",
            ],
        )
        writer.writeheader()
        writer.writerows(result.rows)
