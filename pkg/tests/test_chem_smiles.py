import random

import pytest
from helpers import molecules_isomorphic

from childplay.chem import (
    SmilesError,
    canonical_smiles,
    make_molecule,
    parse_smiles,
    sample_molecule,
)


def kinds(call, *args):
    with pytest.raises(SmilesError) as excinfo:
        call(*args)
    return excinfo.value.kind


def test_parse_linear_chain():
    mol = parse_smiles("CCO")
    assert mol.elements == ("C", "C", "O")
    assert mol.bonds == ((0, 1, 1), (1, 2, 1))


def test_parse_ring():
    mol = parse_smiles("C1CCCCC1")
    assert len(mol.elements) == 6
    assert len(mol.bonds) == 6


def test_parse_branches():
    mol = parse_smiles("CC(C)(C)C")
    assert mol.elements == ("C",) * 5
    center = [i for i in range(5) if mol.bond_order_sum(i) == 4]
    assert center == [1]


def test_parse_double_and_triple():
    mol = parse_smiles("C=O")
    assert mol.bonds == ((0, 1, 2),)
    mol = parse_smiles("C#N")
    assert mol.bonds == ((0, 1, 3),)


def test_valence_violations():
    assert kinds(parse_smiles, "C(C)(C)(C)(C)C") == "valence"
    assert kinds(parse_smiles, "O(C)(C)C") == "valence"
    assert kinds(parse_smiles, "N(=O)=O") == "valence"  # caps have no charge model


def test_syntax_rejections():
    for bad in ("c1ccccc1", "[CH4]", "C+", "C.C", "CC-", "=C", "C((C))C", "Cl"):
        assert kinds(parse_smiles, bad) == "syntax"


def test_unclosed_markers():
    assert kinds(parse_smiles, "C1CC") == "unclosed_ring"
    assert kinds(parse_smiles, "C(CC") == "unclosed_branch"
    assert kinds(parse_smiles, "CC)") == "syntax"


def test_empty_is_syntax():
    assert kinds(parse_smiles, "") == "syntax"


def test_ring_bond_order_on_either_side():
    a = parse_smiles("C=1CCCCC=1")
    b = parse_smiles("C1CCCCC=1")
    assert a.bonds == b.bonds
    assert any(order == 2 for _, _, order in a.bonds)


def test_canonical_same_graph_same_text():
    assert canonical_smiles(parse_smiles("OCC")) == canonical_smiles(parse_smiles("CCO"))
    assert canonical_smiles(parse_smiles("C(C)O")) == canonical_smiles(
        parse_smiles("CCO")
    )


def test_canonical_single_atom():
    assert canonical_smiles(parse_smiles("C")) == "C"


def test_canonical_distinguishes_non_isomorphic():
    assert canonical_smiles(parse_smiles("CCO")) != canonical_smiles(
        parse_smiles("CCC")
    )
    assert canonical_smiles(parse_smiles("C=O")) != canonical_smiles(
        parse_smiles("CO")
    )


def permute_molecule(mol, rng):
    n = len(mol.elements)
    perm = list(range(n))
    rng.shuffle(perm)
    elements = [None] * n
    for old, new in enumerate(perm):
        elements[new] = mol.elements[old]
    bonds = [(perm[i], perm[j], order) for i, j, order in mol.bonds]
    return make_molecule(elements, bonds)


def test_canonical_invariant_under_permutation():
    rng = random.Random(123)
    for _ in range(300):
        mol = sample_molecule(rng)
        reference = canonical_smiles(mol)
        for _ in range(5):
            shuffled = permute_molecule(mol, rng)
            assert canonical_smiles(shuffled) == reference


def test_canonical_invariant_under_100_permutations():
    rng = random.Random(321)
    for _ in range(10):
        mol = sample_molecule(rng, {"ring_prob": 0.5})
        reference = canonical_smiles(mol)
        for _ in range(100):
            assert canonical_smiles(permute_molecule(mol, rng)) == reference


def test_canonical_round_trip_isomorphism():
    rng = random.Random(7)
    for _ in range(500):
        mol = sample_molecule(rng)
        rebuilt = parse_smiles(canonical_smiles(mol))
        assert molecules_isomorphic(mol, rebuilt)


def test_canonical_handles_multi_ring_predictions():
    text = canonical_smiles(parse_smiles("C1CC1C1CC1"))
    rebuilt = parse_smiles(text)
    assert len(rebuilt.bonds) == 7
    assert canonical_smiles(rebuilt) == text


def test_symmetric_ring_all_rotations_agree():
    reference = canonical_smiles(parse_smiles("C1CCCCC1"))
    for text in ("C1CCCCC1", "C2CCCCC2", "C9CCCCC9"):
        assert canonical_smiles(parse_smiles(text)) == reference


def _random_restricted_graph(rng, max_atoms=12):
    """Any connected graph under the valence caps: arbitrary ring sizes and
    counts, bond orders 1-3 — the space predictions can come from."""
    from childplay.chem.molecule import VALENCE_CAPS

    n = rng.randint(1, max_atoms)
    elements = [rng.choice("CCCCNOS") for _ in range(n)]
    used = [0] * n
    bonds = []
    for i in range(1, n):
        anchors = [j for j in range(i) if used[j] < VALENCE_CAPS[elements[j]]]
        if not anchors:
            return None
        j = rng.choice(anchors)
        order = rng.choice([1, 1, 1, 2, 3])
        if used[j] + order > VALENCE_CAPS[elements[j]] or order > VALENCE_CAPS[elements[i]]:
            order = 1
        bonds.append((j, i, order))
        used[j] += order
        used[i] += order
    for _ in range(rng.randint(0, 3)):
        pairs = [
            (a, b)
            for a in range(n)
            for b in range(a + 1, n)
            if used[a] < VALENCE_CAPS[elements[a]]
            and used[b] < VALENCE_CAPS[elements[b]]
            and not any((min(a, b), max(a, b)) == (x, y) for x, y, _ in bonds)
        ]
        if not pairs:
            break
        a, b = rng.choice(pairs)
        bonds.append((a, b, 1))
        used[a] += 1
        used[b] += 1
    return make_molecule(elements, bonds)


def test_canonical_stress_on_arbitrary_restricted_graphs():
    rng = random.Random(99)
    tested = 0
    while tested < 400:
        mol = _random_restricted_graph(rng)
        if mol is None:
            continue
        reference = canonical_smiles(mol)
        for _ in range(5):
            assert canonical_smiles(permute_molecule(mol, rng)) == reference
        assert molecules_isomorphic(mol, parse_smiles(reference))
        tested += 1
