"""Core machine model: words, tables, actions, equivalence."""

import random

import pytest
from hypothesis import given, strategies as st

import mealyforge as mf
from mealyforge.machines import SignedTables, base_name, is_inverse_name

from helpers import rand_invertible, rand_machine

LETTERS = st.sampled_from(["a", "b", "c", "a^-1", "b^-1", "c^-1"])
WORDS = st.lists(LETTERS, max_size=12).map(tuple)


def test_inverse_name_roundtrip():
    assert mf.inverse_name("q") == "q^-1"
    assert mf.inverse_name("q^-1") == "q"
    assert base_name("q^-1") == "q"
    assert is_inverse_name("q^-1") and not is_inverse_name("q")


def test_signed_letter_parse():
    letter = mf.SignedLetter.parse("x^-1")
    assert letter.name == "x" and letter.sign == -1
    assert str(letter) == "x^-1"
    assert letter.inverse() == mf.SignedLetter("x", 1)


@given(WORDS)
def test_invert_word_involution(word):
    assert mf.invert_word(mf.invert_word(word)) == word


@given(WORDS)
def test_reduce_word_idempotent(word):
    reduced = mf.reduce_word(word)
    assert mf.reduce_word(reduced) == reduced


@given(WORDS)
def test_reduce_word_cancels_inverse(word):
    assert mf.reduce_word(word + mf.invert_word(word)) == ()


def test_reduce_word_example():
    assert mf.reduce_word(("a", "b", "b^-1", "a^-1", "c")) == ("c",)


def test_alphabet_validation():
    with pytest.raises(mf.MealyError):
        mf.Alphabet(("a", "bad name"))
    with pytest.raises(mf.MealyError):
        mf.Alphabet(("a", "b#c"))
    with pytest.raises(mf.MealyError):
        mf.Alphabet(("a", "b:c"))
    alphabet = mf.Alphabet(("x", "y"))
    with pytest.raises(mf.UnknownSymbol):
        alphabet.index("z")


def test_comma_names_allowed():
    machine = mf.MealyMachine.from_tables(("p,q",), ("0",), [[0]], [[0]])
    assert machine.states == ("p,q",)


def test_from_tables_validation():
    with pytest.raises(mf.MealyError):
        mf.MealyMachine.from_tables(("q",), ("0", "1"), [[0]], [[0, 1]])


def test_from_edges_missing_and_duplicate():
    edges = [("q", "0", "q", "0")]
    with pytest.raises(mf.MissingTransition):
        mf.MealyMachine.from_edges(("q",), ("0", "1"), edges)
    dup = [("q", "0", "q", "0"), ("q", "0", "q", "1"), ("q", "1", "q", "1")]
    with pytest.raises(mf.DuplicateTransition):
        mf.MealyMachine.from_edges(("q",), ("0", "1"), dup)
    with pytest.raises(mf.UnknownSymbol):
        mf.MealyMachine.from_edges(("q",), ("0",), [("q", "0", "r", "0")])


def test_parse_word_coercions(odometer):
    alphabet = odometer.alphabet
    assert mf.parse_word(alphabet, "01") == ("0", "1")
    assert mf.parse_word(alphabet, "0,1") == ("0", "1")
    assert mf.parse_word(alphabet, "0 1") == ("0", "1")
    assert mf.parse_word(alphabet, ("0", "1")) == ("0", "1")
    with pytest.raises(mf.UnknownSymbol):
        mf.parse_word(alphabet, "02")


def test_odometer_is_binary_increment(odometer):
    """The odometer adds one to least-significant-bit-first binary words."""
    assert mf.act_output(odometer, ("q",), ("0", "0")) == ("1", "0")
    assert mf.act_output(odometer, ("q", "q"), ("0", "0")) == ("0", "1")
    assert mf.act_output(odometer, ("q^-1",), ("0", "1")) == ("1", "0")
    assert mf.act_output(odometer, ("q^-1", "q"), ("0", "1")) == ("0", "1")
    assert mf.act_transition(odometer, ("q",), ("0", "0")) == ("e",)
    out, trans = mf.act_pair(odometer, ("q",), ("1", "1"))
    assert out == ("0", "0") and trans == ("q",)


def test_rightmost_state_acts_first():
    """A state word acts as the composition with its rightmost state first."""
    rng = random.Random(5)
    for _ in range(50):
        machine = rand_invertible(rng, rng.randrange(1, 4), rng.randrange(1, 4))
        states = machine.states
        u = tuple(rng.choice(states) for _ in range(3))
        word = tuple(rng.choice(machine.alphabet.symbols) for _ in range(4))
        expected = word
        for state in reversed(u):
            expected = mf.act_output(machine, (state,), expected)
        assert mf.act_output(machine, u, word) == expected


def test_signed_states_need_invertible():
    machine = mf.MealyMachine.from_tables(
        ("p", "q"), ("0", "1"), [[0, 1], [1, 0]], [[0, 0], [0, 1]]
    )
    assert not mf.is_invertible(machine)
    with pytest.raises(mf.SignedStateOnNonInvertible):
        mf.act_output(machine, ("p^-1",), ("0",))


def test_signed_tables_reject_bare_string(odometer):
    with pytest.raises(TypeError):
        SignedTables(odometer).codes("qq")


def test_predicates_on_corpus(odometer, grigorchuk, identity2):
    assert mf.is_invertible(odometer) and not mf.is_reversible(odometer)
    assert not mf.is_bireversible(odometer)
    assert mf.is_invertible(grigorchuk) and not mf.is_reversible(grigorchuk)
    assert mf.is_invertible(identity2)
    assert mf.is_reversible(identity2)
    assert mf.is_bireversible(identity2)


def test_grigorchuk_state_relations(grigorchuk):
    assert mf.states_equivalent(grigorchuk, ("b", "c"), ("d",))
    assert mf.states_equivalent(grigorchuk, ("a", "a"), ("id",))
    assert not mf.states_equivalent(grigorchuk, ("b",), ("c",))


def test_states_equivalent_matches_signature(grigorchuk):
    pairs = [(("b", "c"), ("d",)), (("a",), ("b",)), (("c", "b"), ("d",))]
    for u, v in pairs:
        same_sig = mf.action_signature(grigorchuk, u) == mf.action_signature(
            grigorchuk, v
        )
        assert same_sig == mf.states_equivalent(grigorchuk, u, v)


def test_minimize_merges_copies(odometer):
    doubled = mf.MealyMachine.from_tables(
        ("q", "e", "e2"),
        ("0", "1"),
        [[1, 0], [1, 1], [2, 2]],
        [[1, 0], [0, 1], [0, 1]],
    )
    merged = mf.minimize(doubled)
    assert len(merged.states) == 2
    assert mf.machine_isomorphic(merged, mf.minimize(odometer))


def test_machine_isomorphic(odometer):
    renamed = mf.MealyMachine.from_tables(
        ("top", "bot"), ("0", "1"), list(odometer.transitions), list(odometer.outputs)
    )
    assert mf.machine_isomorphic(odometer, renamed)
    other = mf.MealyMachine.from_tables(
        ("q", "e"), ("0", "1"), [[1, 0], [1, 1]], [[0, 1], [0, 1]]
    )
    assert not mf.machine_isomorphic(odometer, other)


def test_action_signature_reuses_reachable_part(odometer):
    padded = mf.MealyMachine.from_tables(
        ("q", "e", "junk"),
        ("0", "1"),
        [[1, 0], [1, 1], [2, 2]],
        [[1, 0], [0, 1], [1, 0]],
    )
    assert mf.action_signature(padded, ("q",)) == mf.action_signature(
        odometer, ("q",)
    )


def test_all_words_order():
    words = list(mf.all_words(("0", "1"), 2))
    assert words == [("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]


def test_word_formatting(odometer):
    assert odometer.word("01") == ("0", "1")


def test_equivalence_budget(grigorchuk):
    with pytest.raises(mf.BudgetExceeded):
        mf.states_equivalent(grigorchuk, ("b",), ("c",), budget=1)


def test_random_machine_tables_shape():
    rng = random.Random(0)
    machine = rand_machine(rng, 3, 2)
    assert len(machine.states) == 3 and len(machine.alphabet.symbols) == 2
    assert all(len(row) == 2 for row in machine.transitions)
