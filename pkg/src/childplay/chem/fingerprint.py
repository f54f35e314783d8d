"""Linear-path fingerprints and Tanimoto similarity.

Every simple path of 1-7 atoms is encoded as element(order)element...,
hashed into a fixed 2048-bit space; the lexicographically smaller of the
two path directions is used so both read the same bit.
"""

from __future__ import annotations

import hashlib

from .molecule import Molecule

FINGERPRINT_BITS = 2048
MAX_PATH_ATOMS = 7


def _stable_hash(text: str) -> int:
    digest = hashlib.sha256(text.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def _path_encoding(mol: Molecule, atoms: list, orders: list) -> str:
    forward = []
    for index, atom in enumerate(atoms):
        forward.append(mol.elements[atom])
        if index < len(orders):
            forward.append(str(orders[index]))
    forward_text = "".join(forward)
    backward = []
    for index in range(len(atoms) - 1, -1, -1):
        backward.append(mol.elements[atoms[index]])
        if index > 0:
            backward.append(str(orders[index - 1]))
    backward_text = "".join(backward)
    return min(forward_text, backward_text)


def path_fingerprint(mol: Molecule) -> frozenset:
    """Bit set (indices into 2048 bits) over all simple paths of 1-7 atoms."""
    adjacency = mol.neighbors()
    encodings: set = set()

    def extend(path: list, orders: list) -> None:
        encodings.add(_path_encoding(mol, path, orders))
        if len(path) == MAX_PATH_ATOMS:
            return
        tail = path[-1]
        on_path = set(path)
        for j, order in adjacency[tail]:
            if j not in on_path:
                extend(path + [j], orders + [order])

    for start in range(len(mol.elements)):
        extend([start], [])
    return frozenset(_stable_hash(enc) % FINGERPRINT_BITS for enc in encodings)


def tanimoto(a: frozenset, b: frozenset) -> float:
    """|a & b| / |a | b|; two empty sets count as identical (1.0)."""
    union = len(a | b)
    if union == 0:
        return 1.0
    return len(a & b) / union
