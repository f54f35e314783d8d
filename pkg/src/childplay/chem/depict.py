"""Rectilinear ASCII depiction of puzzle molecules.

Layout rules: the longest chain runs left to right with atoms 4 columns
apart; branches leave it 2 rows up or down; the single ring (when present)
is drawn as a rectangle.  Horizontal bonds are runs of '-' (single) or '='
(double), vertical bonds '|' or ':'; atoms are their element letters; no
diagonals.  The layout is a deterministic function of the canonical atom
order; placements that would collide raise :class:`LayoutError`, and the
puzzle factory resamples the molecule instead of surfacing that.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .molecule import Molecule, find_cycle, ring_count, sample_molecule
from .smiles import canonical_ranks

H_STEP = 4  # columns between horizontally bonded atoms
V_STEP = 2  # rows between vertically bonded atoms

RING_COORDS = {
    6: ((0, 0), (0, 4), (0, 8), (2, 8), (2, 4), (2, 0)),
    5: ((0, 0), (0, 4), (0, 8), (2, 8), (2, 0)),
}

H_GLYPHS = {1: "-", 2: "="}
V_GLYPHS = {1: "|", 2: ":"}


class LayoutError(RuntimeError):
    """The molecule cannot be placed without glyph collisions."""


@dataclass(frozen=True)
class AsciiDepiction:
    grid: tuple            # rows of the character matrix, trailing blanks stripped
    atom_cells: dict       # atom index -> (row, col)

    @property
    def text(self) -> str:
        return "\n".join(self.grid) + "\n"


def _tree_paths(mol: Molecule):
    """Longest simple paths of an acyclic molecule."""
    adjacency = mol.neighbors()
    n = len(mol.elements)

    def path_from(start):
        # BFS parents give the unique tree path to every other atom
        parent = {start: None}
        queue = [start]
        while queue:
            i = queue.pop(0)
            for j, _ in adjacency[i]:
                if j not in parent:
                    parent[j] = i
                    queue.append(j)
        return parent

    best_len = 0
    best_paths = []
    for a in range(n):
        parent = path_from(a)
        for b in range(n):
            path = []
            x = b
            while x is not None:
                path.append(x)
                x = parent[x]
            if len(path) > best_len:
                best_len = len(path)
                best_paths = [path]
            elif len(path) == best_len:
                best_paths.append(path)
    return best_paths


def _main_chain(mol: Molecule, ranks: list) -> list:
    paths = _tree_paths(mol)
    def key(path):
        seq = tuple(ranks[i] for i in path)
        return min(seq, seq[::-1])
    best = min(paths, key=key)
    seq = tuple(ranks[i] for i in best)
    return best if seq <= seq[::-1] else best[::-1]


def _perpendicular(direction: tuple) -> list:
    if direction[0] == 0:  # horizontal travel: branch up then down
        return [(-1, 0), (1, 0)]
    return [(0, 1), (0, -1)]  # vertical travel: branch right then left


def _step(position: tuple, direction: tuple) -> tuple:
    return (
        position[0] + direction[0] * V_STEP,
        position[1] + direction[1] * H_STEP,
    )


class _Layout:
    def __init__(self, mol: Molecule, ranks: list):
        self.mol = mol
        self.ranks = ranks
        self.adjacency = mol.neighbors()
        self.positions: dict = {}

    def place(self, atom: int, position: tuple) -> None:
        if position in self.positions.values():
            raise LayoutError(f"cell {position} already holds an atom")
        self.positions[atom] = position

    def place_subtree(self, atom: int, direction: tuple) -> None:
        """Lay out the unplaced neighbors of ``atom``: first child straight
        ahead, remaining children on the perpendicular slots."""
        children = sorted(
            (j for j, _ in self.adjacency[atom] if j not in self.positions),
            key=lambda j: self.ranks[j],
        )
        if not children:
            return
        slots = [direction] + _perpendicular(direction)
        if len(children) > len(slots):
            raise LayoutError("more branches than free directions")
        origin = self.positions[atom]
        for child, slot in zip(children, slots):
            self.place(child, _step(origin, slot))
            self.place_subtree(child, slot)


def _layout_tree(mol: Molecule, ranks: list) -> dict:
    layout = _Layout(mol, ranks)
    chain = _main_chain(mol, ranks)
    for index, atom in enumerate(chain):
        layout.place(atom, (0, index * H_STEP))
    for atom in chain:
        off_chain = sorted(
            (j for j, _ in layout.adjacency[atom] if j not in layout.positions),
            key=lambda j: ranks[j],
        )
        slots = [(-1, 0), (1, 0)]
        if len(off_chain) > len(slots):
            raise LayoutError("chain atom with more than two branches")
        for child, slot in zip(off_chain, slots):
            layout.place(child, _step(layout.positions[atom], slot))
            layout.place_subtree(child, slot)
    return layout.positions


def _layout_ring(mol: Molecule, ranks: list) -> dict:
    cycle = find_cycle(mol)
    if cycle is None or len(cycle) not in RING_COORDS:
        raise LayoutError("unsupported ring")
    # deterministic orientation: start at the lowest-ranked ring atom and
    # walk toward its lower-ranked ring neighbor
    start_pos = min(range(len(cycle)), key=lambda k: ranks[cycle[k]])
    cycle = cycle[start_pos:] + cycle[:start_pos]
    if ranks[cycle[-1]] < ranks[cycle[1]]:
        cycle = [cycle[0]] + cycle[1:][::-1]

    coords = RING_COORDS[len(cycle)]
    layout = _Layout(mol, ranks)
    for atom, position in zip(cycle, coords):
        layout.place(atom, position)

    max_col = max(c for _, c in coords)
    for atom, (row, col) in zip(cycle, coords):
        substituents = sorted(
            (j for j, _ in layout.adjacency[atom] if j not in layout.positions),
            key=lambda j: ranks[j],
        )
        if not substituents:
            continue
        slots = [(-1, 0) if row == 0 else (1, 0)]
        if col == 0:
            slots.append((0, -1))
        elif col == max_col:
            slots.append((0, 1))
        if len(substituents) > len(slots):
            raise LayoutError("ring atom with more substituents than directions")
        for child, slot in zip(substituents, slots):
            layout.place(child, _step((row, col), slot))
            layout.place_subtree(child, slot)
    return layout.positions


def render_ascii(mol: Molecule) -> AsciiDepiction:
    """Depict a molecule satisfying the puzzle invariants.

    Raises :class:`LayoutError` when the deterministic layout collides;
    use :func:`new_depicted_molecule` to sample until one renders.
    """
    ranks = canonical_ranks(mol)
    if ring_count(mol) == 0:
        positions = _layout_tree(mol, ranks)
    else:
        positions = _layout_ring(mol, ranks)

    min_row = min(r for r, _ in positions.values())
    min_col = min(c for _, c in positions.values())
    positions = {
        atom: (r - min_row, c - min_col) for atom, (r, c) in positions.items()
    }

    cells: dict = {}
    for atom, cell in positions.items():
        cells[cell] = mol.elements[atom]

    for i, j, order in mol.bonds:
        (r1, c1), (r2, c2) = positions[i], positions[j]
        if r1 == r2:
            glyphs = H_GLYPHS
            span = [(r1, c) for c in range(min(c1, c2) + 1, max(c1, c2))]
        elif c1 == c2:
            glyphs = V_GLYPHS
            span = [(r, c1) for r in range(min(r1, r2) + 1, max(r1, r2))]
        else:
            raise LayoutError(f"bond {i}-{j} is not axis-aligned")
        if order not in glyphs:
            raise LayoutError(f"no glyph for bond order {order}")
        for cell in span:
            if cell in cells:
                raise LayoutError(f"bond glyph collides at {cell}")
            cells[cell] = glyphs[order]

    height = max(r for r, _ in cells) + 1
    width = max(c for _, c in cells) + 1
    rows = []
    for r in range(height):
        rows.append("".join(cells.get((r, c), " ") for c in range(width)).rstrip())
    return AsciiDepiction(grid=tuple(rows), atom_cells=positions)


def new_depicted_molecule(rng: random.Random, options: dict | None = None) -> tuple:
    """Sample molecules until one lays out; returns (molecule, depiction).

    Layout failures never surface to callers of the puzzle API.
    """
    while True:
        mol = sample_molecule(rng, options)
        try:
            return mol, render_ascii(mol)
        except LayoutError:
            continue
