import random

from childplay.chem import audit_molecule, make_molecule, sample_molecule
from childplay.chem.molecule import find_cycle, ring_count


def test_make_molecule_normalizes_bonds():
    mol = make_molecule(["C", "O"], [(1, 0, 1)])
    assert mol.bonds == ((0, 1, 1),)


def test_implicit_hydrogens():
    mol = make_molecule(["C", "O"], [(0, 1, 1)])
    assert mol.implicit_hydrogens(0) == 3
    assert mol.implicit_hydrogens(1) == 1


def test_ring_detection():
    chain = make_molecule(["C"] * 4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    assert ring_count(chain) == 0
    assert find_cycle(chain) is None
    ring = make_molecule(
        ["C"] * 5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1)]
    )
    assert ring_count(ring) == 1
    cycle = find_cycle(ring)
    assert sorted(cycle) == [0, 1, 2, 3, 4]


def test_audit_flags_valence_violation():
    bad = make_molecule(
        ["O", "C", "C", "C"], [(0, 1, 2), (0, 2, 1), (0, 3, 1)]
    )
    assert any("valence" in p for p in audit_molecule(bad))


def test_audit_flags_disconnection():
    bad = make_molecule(["C", "C", "C"], [(0, 1, 1)])
    assert "disconnected graph" in audit_molecule(bad)


def test_sampler_respects_invariants_bulk():
    rng = random.Random(99)
    sizes = set()
    ringy = 0
    doubles = 0
    for _ in range(2000):
        mol = sample_molecule(rng)
        assert audit_molecule(mol) == []
        sizes.add(len(mol.elements))
        if ring_count(mol) == 1:
            ringy += 1
        if any(order == 2 for _, _, order in mol.bonds):
            doubles += 1
        assert "S" not in mol.elements  # sulfur off by default
    assert min(sizes) == 3 and max(sizes) == 9
    assert ringy > 0 and doubles > 0


def test_sampler_deterministic_per_seed():
    a = sample_molecule(random.Random(5))
    b = sample_molecule(random.Random(5))
    assert a == b


def test_sampler_sulfur_option():
    rng = random.Random(12)
    seen_sulfur = False
    for _ in range(300):
        mol = sample_molecule(rng, {"allow_sulfur": True})
        assert audit_molecule(mol) == []
        if "S" in mol.elements:
            seen_sulfur = True
    assert seen_sulfur
