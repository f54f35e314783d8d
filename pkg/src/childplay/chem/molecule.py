"""Heavy-atom molecular graphs and the puzzle molecule sampler.

The restricted chemistry: elements C/N/O/S, bond orders 1-3 (sampling only
emits 1 and 2), implicit hydrogens derived from fixed valence caps,
connected graphs, and for sampled puzzles at most one ring of size 5 or 6.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

VALENCE_CAPS = {"C": 4, "N": 3, "O": 2, "S": 2}

# element draw weights; sulfur only enters with the allow_sulfur option
DEFAULT_WEIGHTS = {"C": 0.7, "N": 0.15, "O": 0.15, "S": 0.0}
SULFUR_WEIGHTS = {"C": 0.65, "N": 0.15, "O": 0.10, "S": 0.10}


@dataclass(frozen=True)
class Molecule:
    """Immutable heavy-atom graph: elements plus (i, j, order) bonds, i < j."""

    elements: tuple
    bonds: tuple

    def neighbors(self) -> list:
        """Adjacency lists of (neighbor, order), index-aligned with elements."""
        adjacency = [[] for _ in self.elements]
        for i, j, order in self.bonds:
            adjacency[i].append((j, order))
            adjacency[j].append((i, order))
        return adjacency

    def bond_order_sum(self, index: int) -> int:
        return sum(order for i, j, order in self.bonds if index in (i, j))

    def implicit_hydrogens(self, index: int) -> int:
        return VALENCE_CAPS[self.elements[index]] - self.bond_order_sum(index)


def make_molecule(elements, bonds) -> Molecule:
    normalized = tuple(
        sorted((min(i, j), max(i, j), order) for i, j, order in bonds)
    )
    return Molecule(tuple(elements), normalized)


def is_connected(mol: Molecule) -> bool:
    n = len(mol.elements)
    if n == 0:
        return False
    adjacency = mol.neighbors()
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j, _ in adjacency[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def ring_count(mol: Molecule) -> int:
    """Independent cycles: bonds - atoms + components (0 for trees)."""
    n = len(mol.elements)
    adjacency = mol.neighbors()
    seen = set()
    components = 0
    for start in range(n):
        if start in seen:
            continue
        components += 1
        seen.add(start)
        stack = [start]
        while stack:
            i = stack.pop()
            for j, _ in adjacency[i]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(mol.bonds) - n + components


def find_cycle(mol: Molecule) -> Optional[list]:
    """Atoms of one cycle in ring order, or None for acyclic graphs."""
    adjacency = mol.neighbors()
    parent: dict = {0: None}
    stack = [(0, None)]
    while stack:
        i, from_atom = stack.pop()
        for j, _ in adjacency[i]:
            if j == from_atom:
                continue
            if j in parent:
                # back edge: walk both ends up to the common ancestor
                path_i = []
                a = i
                while a is not None:
                    path_i.append(a)
                    a = parent[a]
                seen = set(path_i)
                b = j
                path_j = []
                while b not in seen:
                    path_j.append(b)
                    b = parent[b]
                cycle = path_i[: path_i.index(b) + 1]
                return cycle[::-1] + path_j
            parent[j] = i
            stack.append((j, i))
    return None


def audit_molecule(mol: Molecule, puzzle_rules: bool = True) -> list:
    """Violated invariants, empty when the molecule is sound.

    ``puzzle_rules`` additionally enforces the sampled-puzzle constraints
    (size 3..12, at most one ring of size 5 or 6, orders 1-2).
    """
    problems = []
    n = len(mol.elements)
    for element in mol.elements:
        if element not in VALENCE_CAPS:
            problems.append(f"unknown element {element!r}")
            return problems
    for i, j, order in mol.bonds:
        if not (0 <= i < n and 0 <= j < n) or i == j:
            problems.append(f"bad bond endpoints ({i}, {j})")
        if order not in (1, 2, 3):
            problems.append(f"bad bond order {order}")
    if len({(i, j) for i, j, _ in mol.bonds}) != len(mol.bonds):
        problems.append("duplicate bond")
    for i in range(n):
        if mol.bond_order_sum(i) > VALENCE_CAPS[mol.elements[i]]:
            problems.append(f"valence exceeded at atom {i}")
    if not is_connected(mol):
        problems.append("disconnected graph")
    if puzzle_rules:
        if not 3 <= n <= 12:
            problems.append(f"atom count {n} outside 3..12")
        if any(order == 3 for _, _, order in mol.bonds):
            problems.append("triple bond in a puzzle molecule")
        rings = ring_count(mol)
        if rings > 1:
            problems.append(f"{rings} rings")
        elif rings == 1:
            cycle = find_cycle(mol)
            if cycle is not None and len(cycle) not in (5, 6):
                problems.append(f"ring of size {len(cycle)}")
    return problems


def _weighted_element(rng: random.Random, weights: dict) -> str:
    roll = rng.random() * sum(weights.values())
    acc = 0.0
    for element, weight in weights.items():
        acc += weight
        if roll < acc:
            return element
    return "C"


def sample_molecule(rng: random.Random, options: dict | None = None) -> Molecule:
    """Random puzzle molecule: a tree of 3-9 atoms, an optional single
    5/6-ring (p = 0.3), and double bonds where valence allows (p = 0.2).

    Constraint violations are handled by rejection resampling, so the
    result always passes :func:`audit_molecule`.
    """
    options = options or {}
    min_atoms = options.get("min_atoms", 3)
    max_atoms = options.get("max_atoms", 9)
    ring_prob = options.get("ring_prob", 0.3)
    double_prob = options.get("double_bond_prob", 0.2)
    weights = SULFUR_WEIGHTS if options.get("allow_sulfur") else DEFAULT_WEIGHTS

    while True:
        mol = _try_sample(rng, min_atoms, max_atoms, ring_prob, double_prob, weights)
        if mol is not None and not audit_molecule(mol):
            return mol


def _try_sample(rng, min_atoms, max_atoms, ring_prob, double_prob, weights):
    n = rng.randint(min_atoms, max_atoms)
    elements = [_weighted_element(rng, weights) for _ in range(n)]
    bonds = []
    used = [0] * n
    for i in range(1, n):
        anchors = [j for j in range(i) if used[j] < VALENCE_CAPS[elements[j]]]
        if not anchors:
            return None
        j = rng.choice(anchors)
        bonds.append((j, i, 1))
        used[j] += 1
        used[i] += 1

    if n >= 5 and rng.random() < ring_prob:
        closure = _ring_closure_candidates(n, bonds, elements, used, rng)
        if closure is not None:
            a, b = closure
            bonds.append((a, b, 1))
            used[a] += 1
            used[b] += 1

    upgraded = []
    for a, b, order in bonds:
        if (
            rng.random() < double_prob
            and used[a] < VALENCE_CAPS[elements[a]]
            and used[b] < VALENCE_CAPS[elements[b]]
        ):
            order = 2
            used[a] += 1
            used[b] += 1
        upgraded.append((a, b, order))
    return make_molecule(elements, upgraded)


def _ring_closure_candidates(n, bonds, elements, used, rng):
    """A tree edge (a, b) whose addition closes a 5- or 6-cycle, or None."""
    adjacency = [[] for _ in range(n)]
    for a, b, _ in bonds:
        adjacency[a].append(b)
        adjacency[b].append(a)

    def tree_distance(start):
        dist = {start: 0}
        queue = [start]
        while queue:
            i = queue.pop(0)
            for j in adjacency[i]:
                if j not in dist:
                    dist[j] = dist[i] + 1
                    queue.append(j)
        return dist

    candidates = []
    for a in range(n):
        if used[a] >= VALENCE_CAPS[elements[a]]:
            continue
        dist = tree_distance(a)
        for b in range(a + 1, n):
            if used[b] >= VALENCE_CAPS[elements[b]]:
                continue
            if dist.get(b) in (4, 5):  # path of 5 or 6 atoms -> ring of 5 or 6
                candidates.append((a, b))
    if not candidates:
        return None
    return rng.choice(candidates)
