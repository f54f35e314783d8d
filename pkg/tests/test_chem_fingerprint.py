import random

from childplay.chem import parse_smiles, path_fingerprint, sample_molecule, tanimoto
from childplay.chem.fingerprint import FINGERPRINT_BITS, _stable_hash


def bits_for(encodings):
    return frozenset(_stable_hash(e) % FINGERPRINT_BITS for e in encodings)


def test_single_atom_one_bit():
    assert len(path_fingerprint(parse_smiles("C"))) == 1


def test_identical_molecules_identical_bits():
    a = path_fingerprint(parse_smiles("CCO"))
    b = path_fingerprint(parse_smiles("OCC"))
    assert a == b


def test_bits_match_hand_enumerated_paths():
    # CCO: atom paths C, C, O; pairs C1C, C1O; triple C1C1O (direction-min)
    expected = bits_for({"C", "O", "C1C", "C1O", "C1C1O"})
    assert path_fingerprint(parse_smiles("CCO")) == expected
    # CCC collapses repeated encodings
    expected = bits_for({"C", "C1C", "C1C1C"})
    assert path_fingerprint(parse_smiles("CCC")) == expected


def test_double_bond_distinguishes_paths():
    single = path_fingerprint(parse_smiles("CO"))
    double = path_fingerprint(parse_smiles("C=O"))
    assert single != double
    assert bits_for({"C", "O", "C2O"}) == double


def test_direction_symmetry_uses_lex_smaller_encoding():
    # N-C-O reads "N1C1O" forward and "O1C1N" backward; the smaller is kept
    assert bits_for({"C", "N", "O", "C1N", "C1O", "N1C1O"}) == path_fingerprint(
        parse_smiles("NCO")
    )


def test_paths_capped_at_seven_atoms():
    ten = parse_smiles("C" * 10)
    seven = parse_smiles("C" * 7)
    assert path_fingerprint(seven) <= path_fingerprint(ten)
    # the 8-atom path encoding is absent: longest contributing path has 7 atoms
    assert bits_for({"C1" * 7 + "C"}) & path_fingerprint(ten) == frozenset()


def test_tanimoto_basics():
    assert tanimoto(frozenset({1, 2}), frozenset({1, 2})) == 1.0
    assert tanimoto(frozenset({1, 2}), frozenset({3, 4})) == 0.0
    assert tanimoto(frozenset({1, 2}), frozenset({2, 3})) == 1 / 3
    assert tanimoto(frozenset(), frozenset()) == 1.0


def test_self_similarity_always_one():
    rng = random.Random(31)
    for _ in range(200):
        mol = sample_molecule(rng)
        fp = path_fingerprint(mol)
        assert tanimoto(fp, fp) == 1.0


def test_similarity_bounds():
    rng = random.Random(32)
    previous = path_fingerprint(sample_molecule(rng))
    for _ in range(200):
        fp = path_fingerprint(sample_molecule(rng))
        value = tanimoto(previous, fp)
        assert 0.0 <= value <= 1.0
        previous = fp
