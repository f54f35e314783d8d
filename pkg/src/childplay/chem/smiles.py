"""Restricted SMILES: parsing and canonical emission.

Grammar accepted by the parser: uppercase atoms C/N/O/S, implicit single
bonds, '=' double and '#' triple bonds, '(' ')' branches, and ring-closure
digits 1-9 (reusable after closing).  Aromatic lowercase, brackets,
charges, stereo marks, dots and everything else is rejected.  A parse that
succeeds syntactically can still fail the valence caps (C<=4, N<=3, O<=2,
S<=2 counting bond orders).

Canonical form: extended-connectivity refinement iterated to a fixed
point, initial invariant (element, bond-order multiset), remaining ties
broken exhaustively (every branch emitted, lexicographically smallest
string kept), then a deterministic depth-first emission starting from the
lowest-ranked atom.  Isomorphic graphs yield identical text.
"""

from __future__ import annotations

from .molecule import VALENCE_CAPS, Molecule, make_molecule

MAX_SMILES_LENGTH = 512
MAX_SMILES_ATOMS = 100
# guard against adversarially symmetric inputs; sampled puzzles stay tiny
MAX_TIEBREAK_BRANCHES = 20_000

BOND_SYMBOLS = {1: "", 2: "=", 3: "#"}
SYMBOL_ORDERS = {"=": 2, "#": 3}


class SmilesError(ValueError):
    """Invalid SMILES; ``kind`` is syntax, unclosed_ring, unclosed_branch or valence."""

    def __init__(self, kind: str, message: str, pos: int = -1):
        super().__init__(message)
        self.kind = kind
        self.pos = pos


def parse_smiles(raw: str) -> Molecule:
    """Parse a restricted SMILES string into a molecular graph.

    Raises :class:`SmilesError` on anything outside the grammar or on a
    valence violation; hydrogens are implicit in the result.
    """
    if not raw:
        raise SmilesError("syntax", "empty SMILES")
    if len(raw) > MAX_SMILES_LENGTH:
        raise SmilesError("syntax", "SMILES too long")

    elements: list[str] = []
    bonds: list[tuple] = []
    branch_stack: list[int] = []
    open_rings: dict = {}  # digit -> (atom, explicit bond order or None)
    current = -1
    pending_order = None
    just_opened = False  # '(' must be followed by a bond symbol or an atom

    def add_bond(a: int, b: int, order: int, pos: int) -> None:
        key = (min(a, b), max(a, b))
        if a == b:
            raise SmilesError("syntax", "ring closure bonds an atom to itself", pos)
        if any((min(i, j), max(i, j)) == key for i, j, _ in bonds):
            raise SmilesError("syntax", "duplicate bond between the same atoms", pos)
        bonds.append((a, b, order))

    for pos, ch in enumerate(raw):
        if ch in VALENCE_CAPS:
            elements.append(ch)
            if len(elements) > MAX_SMILES_ATOMS:
                raise SmilesError("syntax", "too many atoms")
            new_index = len(elements) - 1
            if current >= 0:
                add_bond(current, new_index, pending_order or 1, pos)
            elif pending_order is not None:
                raise SmilesError("syntax", "bond symbol before any atom", pos)
            pending_order = None
            current = new_index
            just_opened = False
        elif ch in SYMBOL_ORDERS:
            if pending_order is not None:
                raise SmilesError("syntax", "doubled bond symbol", pos)
            pending_order = SYMBOL_ORDERS[ch]
        elif ch == "(":
            if current < 0:
                raise SmilesError("syntax", "branch before any atom", pos)
            if just_opened:
                raise SmilesError("syntax", "branch must start with an atom", pos)
            if pending_order is not None:
                raise SmilesError("syntax", "bond symbol before a branch", pos)
            branch_stack.append(current)
            just_opened = True
        elif ch == ")":
            if just_opened:
                raise SmilesError("syntax", "empty branch", pos)
            if pending_order is not None:
                raise SmilesError("syntax", "dangling bond symbol", pos)
            if not branch_stack:
                raise SmilesError("syntax", "unmatched ')'", pos)
            current = branch_stack.pop()
        elif ch.isdigit():
            if ch == "0":
                raise SmilesError("syntax", "ring closure digit 0", pos)
            if current < 0:
                raise SmilesError("syntax", "ring digit before any atom", pos)
            if just_opened:
                raise SmilesError("syntax", "ring digit cannot open a branch", pos)
            if ch in open_rings:
                other, opening_order = open_rings.pop(ch)
                order = pending_order or opening_order or 1
                if (
                    pending_order is not None
                    and opening_order is not None
                    and pending_order != opening_order
                ):
                    raise SmilesError("syntax", "conflicting ring bond orders", pos)
                add_bond(other, current, order, pos)
            else:
                open_rings[ch] = (current, pending_order)
            pending_order = None
        else:
            raise SmilesError("syntax", f"unsupported character {ch!r}", pos)

    if pending_order is not None:
        raise SmilesError("syntax", "dangling bond symbol at end")
    if branch_stack:
        raise SmilesError("unclosed_branch", "unclosed '('")
    if open_rings:
        raise SmilesError("unclosed_ring", f"unclosed ring digits {sorted(open_rings)}")

    mol = make_molecule(elements, bonds)
    for index, element in enumerate(mol.elements):
        if mol.bond_order_sum(index) > VALENCE_CAPS[element]:
            raise SmilesError(
                "valence",
                f"{element} atom exceeds valence {VALENCE_CAPS[element]}",
            )
    return mol


# ---------------------------------------------------------------------------
# canonical ranking and emission


def _dense_ranks(keys: list) -> list:
    order = sorted(set(keys))
    mapping = {key: rank for rank, key in enumerate(order)}
    return [mapping[key] for key in keys]


def _refine(adjacency: list, ranks: list) -> list:
    """Iterate neighborhood-extended ranks to a fixed point."""
    n = len(ranks)
    while True:
        keys = [
            (ranks[i], tuple(sorted((order, ranks[j]) for j, order in adjacency[i])))
            for i in range(n)
        ]
        new_ranks = _dense_ranks(keys)
        if new_ranks == ranks:
            return ranks
        ranks = new_ranks


def _candidate_rankings(adjacency: list, ranks: list, budget: list):
    """All maximal tie-break refinements; each yielded ranking is total."""
    ranks = _refine(adjacency, ranks)
    n = len(ranks)
    if len(set(ranks)) == n:
        yield ranks
        return
    tied_rank = min(r for r in ranks if ranks.count(r) > 1)
    tied_atoms = [i for i in range(n) if ranks[i] == tied_rank]
    for atom in tied_atoms:
        budget[0] -= 1
        if budget[0] < 0:
            raise SmilesError("syntax", "molecule too symmetric to canonicalize")
        bumped = [(rank, 0) if i != atom else (rank, -1) for i, rank in enumerate(ranks)]
        yield from _candidate_rankings(adjacency, _dense_ranks(bumped), budget)


def _initial_ranks(mol: Molecule, adjacency: list) -> list:
    keys = [
        (mol.elements[i], tuple(sorted(order for _, order in adjacency[i])))
        for i in range(len(mol.elements))
    ]
    return _dense_ranks(keys)


def _emit(mol: Molecule, adjacency: list, ranks: list) -> str:
    """Deterministic DFS writer for a total ranking."""
    n = len(mol.elements)
    start = ranks.index(min(ranks))
    visited = [False] * n
    visited_order: list = []
    tree_children: list = [[] for _ in range(n)]
    ring_bonds: list = []  # (earlier atom, later atom, order)
    used_edges = set()

    def dfs(atom: int) -> None:
        visited[atom] = True
        visited_order.append(atom)
        for j, order in sorted(adjacency[atom], key=lambda item: ranks[item[0]]):
            edge = (min(atom, j), max(atom, j))
            if edge in used_edges:
                continue
            used_edges.add(edge)
            if visited[j]:
                # back edge: j was visited before atom
                ring_bonds.append((j, atom, order))
            else:
                tree_children[atom].append(j)
                dfs(j)

    dfs(start)

    # assign ring digits in visit order, reusing digits once closed
    free_digits = list("123456789")
    digit_of: dict = {}
    opens_at: list = [[] for _ in range(n)]
    closes_at: list = [[] for _ in range(n)]
    for atom in visited_order:
        closing = sorted(
            (pair for pair in digit_of if pair[1] == atom),
            key=lambda pair: ranks[pair[0]],
        )
        for pair in closing:
            digit = digit_of.pop(pair)
            closes_at[atom].append(digit)
            free_digits.insert(0, digit)
        opening = sorted(
            ((first, second, order) for first, second, order in ring_bonds if first == atom),
            key=lambda item: ranks[item[1]],
        )
        for first, second, order in opening:
            if not free_digits:
                raise SmilesError("syntax", "too many simultaneous rings")
            digit = free_digits.pop(0)
            digit_of[(first, second)] = digit
            opens_at[atom].append((digit, order))

    bond_order_of = {}
    for i, j, order in mol.bonds:
        bond_order_of[(i, j)] = order
        bond_order_of[(j, i)] = order

    def walk(atom: int) -> str:
        out = [mol.elements[atom]]
        for digit, order in opens_at[atom]:
            out.append(BOND_SYMBOLS[order] + digit)
        for digit in closes_at[atom]:
            out.append(digit)
        children = sorted(tree_children[atom], key=lambda j: ranks[j])
        for index, child in enumerate(children):
            segment = BOND_SYMBOLS[bond_order_of[(atom, child)]] + walk(child)
            if index < len(children) - 1:
                out.append("(" + segment + ")")
            else:
                out.append(segment)
        return "".join(out)

    return walk(start)


def _canonicalize(mol: Molecule) -> tuple:
    if len(mol.elements) == 0:
        raise ValueError("cannot canonicalize an empty molecule")
    adjacency = mol.neighbors()
    budget = [MAX_TIEBREAK_BRANCHES]
    best = None
    best_ranks = None
    for ranks in _candidate_rankings(adjacency, _initial_ranks(mol, adjacency), budget):
        text = _emit(mol, adjacency, ranks)
        if best is None or text < best:
            best = text
            best_ranks = ranks
    return best, best_ranks


def canonical_smiles(mol: Molecule) -> str:
    """Unique SMILES per isomorphism class of the restricted graphs."""
    return _canonicalize(mol)[0]


def canonical_ranks(mol: Molecule) -> list:
    """The total atom ordering behind :func:`canonical_smiles` (0 = start)."""
    return _canonicalize(mol)[1]
