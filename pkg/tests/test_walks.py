import pytest
from hypothesis import given, settings, strategies as st

from walkclassifier.fixtures import KREWERAS_TERMS, SEQUENCES_3D
from walkclassifier.walks import (
    StepSet,
    brute_force_walks,
    dedupe_by_prefix,
    enumerate_stepsets,
    expand_counts,
    expand_many,
    parse_steps,
    read_series,
    reverse_steps,
    swap_axes,
    unit_steps,
    write_series,
)

KREWERAS = parse_steps("W,S,NE")
all_2d = enumerate_stepsets(2, 8)
nonempty_2d = st.sampled_from([S for S in all_2d if len(S)])


def test_parse_compass_coordinates_and_bits():
    assert KREWERAS.steps == {(-1, 0), (0, -1), (1, 1)}
    S3 = parse_steps("(0,0,1)")
    assert S3.dim == 3 and S3.steps == {(0, 0, 1)}
    assert parse_steps("11000011").steps == {(-1, -1), (-1, 0), (1, 0), (1, 1)}


@pytest.mark.parametrize("bad", ["", "X,Y", "(0,0);(1,1,1)", "0101"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_steps(bad)


def test_bits_round_trip():
    for S in all_2d[::7]:
        assert StepSet.from_bits(S.bits) == S


def test_kreweras_expansion():
    assert tuple(expand_counts(KREWERAS, 15).terms) == KREWERAS_TERMS


def test_single_step_counts_all_ones():
    assert expand_counts(parse_steps("N"), 12).terms == [1] * 12


@pytest.mark.parametrize("tag", ["A026378", "A005817"])
def test_3d_displayed_sequences(tag):
    bits, terms = SEQUENCES_3D[tag]
    assert tuple(expand_counts(StepSet.from_bits(bits), len(terms)).terms) == terms


def test_brute_force_examples():
    assert brute_force_walks(KREWERAS, 5) == 47
    assert brute_force_walks(KREWERAS, 0) == 1
    assert brute_force_walks(StepSet.of([(1, 1), (-1, -1)]), 4) == 6


def test_enumeration_counts():
    assert len(all_2d) == 256 and sum(1 for S in all_2d if not S.steps) == 1
    assert len(enumerate_stepsets(2, 1)) == 9  # 8 singletons and the empty set
    assert len(unit_steps(3)) == 26


@pytest.mark.slow
def test_enumeration_3d_count():
    assert len(enumerate_stepsets(3, 5)) == 83682


def test_dedupe_singleton_and_known_pairs():
    assert len(dedupe_by_prefix([KREWERAS], 10)) == 1
    # a set and its x/y mirror image share their sequence
    mirror = swap_axes(KREWERAS, (1, 0))
    classes = dedupe_by_prefix([KREWERAS, mirror, parse_steps("N,S")], 20)
    assert len(classes) == 2


def test_dedupe_all_2d_sets():
    # 93 prefixes, one of which is the trivial 1, 0, 0, ... class
    classes = dedupe_by_prefix(all_2d, 30)
    assert len(classes) == 93
    trivial = [c for c in classes if not any(c.prefix[1:])]
    assert len(trivial) == 1 and StepSet(2, frozenset()) in trivial[0].members


def test_reverse_steps():
    assert reverse_steps(KREWERAS) == parse_steps("E,N,SW")
    assert reverse_steps(parse_steps("N,S")) == parse_steps("N,S")
    assert reverse_steps(parse_steps("(1,1,1)")).steps == {(-1, -1, -1)}


@settings(max_examples=25, deadline=None)
@given(nonempty_2d)
def test_oracle_brute_force_agrees_with_dp(S):
    dp = expand_counts(S, 8).terms
    assert dp == [brute_force_walks(S, n) for n in range(8)]


@settings(max_examples=25, deadline=None)
@given(nonempty_2d)
def test_growth_bound_and_specialization_order(S):
    full, half, origin = expand_many(S, 20, [(1, 1), (1, 0), (0, 0)])
    for n, (a, b, c) in enumerate(zip(full.terms, half.terms, origin.terms)):
        assert c <= b <= a <= len(S) ** n


@settings(max_examples=25, deadline=None)
@given(nonempty_2d)
def test_xy_swap_symmetry(S):
    assert expand_counts(S, 25).terms == expand_counts(swap_axes(S, (1, 0)), 25).terms


def test_series_file_round_trip(tmp_path):
    s = expand_counts(KREWERAS, 20)
    path = tmp_path / "k.txt"
    write_series(path, s, KREWERAS)
    meta, terms = read_series(path)
    assert terms == s.terms and meta["steps"] == KREWERAS.bits and meta["N"] == 20
    assert not list(tmp_path.glob("*.tmp"))


def test_series_file_detects_truncation(tmp_path):
    path = tmp_path / "k.txt"
    write_series(path, expand_counts(KREWERAS, 10), KREWERAS)
    path.write_text(path.read_text().rsplit("\n", 3)[0] + "\n")
    with pytest.raises(ValueError):
        read_series(path)


def test_bad_spec_rejected():
    with pytest.raises(ValueError):
        expand_counts(KREWERAS, 5, (1, 1, 1))
