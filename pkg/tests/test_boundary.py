"""Swapping structure, finiteness evidence, bounded orbits, torsion."""

import itertools

import pytest

import mealyforge as mf


def test_swapping_odometer_all_fail(odometer):
    comp = mf.level_component(odometer, ("0", "1"))
    results = [
        mf.swapping_inclusion(comp, p1, p2)
        for p1 in comp.vertices
        for p2 in comp.vertices
    ]
    assert len(results) == 16 and not any(results)
    assert not mf.swapping_invariant(comp, "01", "10")
    assert not mf.is_supersymmetric(comp)


def test_swapping_supersymmetric_components(z2, z3):
    machine = mf.dual(mf.identity_machine_of(z2))
    comp = mf.level_component(machine, ("e", "a"))
    assert comp.vertices == ("ea", "ae")
    assert mf.is_supersymmetric(comp)
    pal = mf.dual(mf.palindrome_machine(z3))
    comp3 = mf.level_component(pal, ("a",))
    assert comp3.size == 3
    assert mf.is_supersymmetric(comp3)


def test_bireversible_components_supersymmetric(z3):
    machine = mf.palindrome_machine(z3)
    assert mf.is_bireversible(machine)
    for word in (("e",), ("a", "b")):
        assert mf.is_supersymmetric(mf.level_component(machine, word))


def test_swapping_cycle_identity(identity2):
    comp = mf.level_component(identity2, ("0",))
    cycle = mf.swapping_cycle(comp, "0", "0")
    assert cycle.vertices == ["0"]
    assert cycle.period_word == "0"


def test_swapping_cycle_frozen(z2):
    machine = mf.dual(mf.identity_machine_of(z2))
    comp = mf.level_component(machine, ("e", "a"))
    fixed = mf.swapping_cycle(comp, "ea", "ea")
    assert fixed.vertices == ["ea"] and fixed.period_word == "ea"
    swapped = mf.swapping_cycle(comp, "ea", "ae")
    assert swapped.vertices == ["ea", "ae"] and swapped.period_word == "eaae"


def test_swapping_cycle_yields_bounded_point(z2):
    machine = mf.dual(mf.identity_machine_of(z2))
    comp = mf.level_component(machine, ("e", "a"))
    cycle = mf.swapping_cycle(comp, "ea", "ae")
    period = tuple(cycle.period_word)
    sizes = {mf.level_component(machine, period * t).size for t in (1, 2, 3)}
    assert len(sizes) == 1


def test_swapping_cycle_precondition(odometer):
    comp = mf.level_component(odometer, ("0", "1"))
    with pytest.raises(ValueError):
        mf.swapping_cycle(comp, "01", "10")


def test_infiniteness_certificate(z2, z3, odometer):
    for group in (z2, z3):
        cert = mf.infiniteness_certificate(mf.cayley_machine(group))
        assert cert is not None
        assert cert.output_letter == "e"
        assert "share a target" in cert.reason
    assert mf.infiniteness_certificate(odometer) is None
    assert mf.infiniteness_certificate(mf.palindrome_machine(z3)) is None
    assert mf.infiniteness_certificate(mf.identity_machine_of(z2)) is None


def test_finiteness_finite_cases(identity2, z2):
    verdict = mf.finiteness_semidecision(identity2)
    assert verdict.kind == "finite"
    assert verdict.bound == 1 and verdict.level == 1
    verdict = mf.finiteness_semidecision(mf.dual(mf.identity_machine_of(z2)))
    assert verdict.kind == "finite"
    assert verdict.bound == 2 and verdict.level == 2


def test_finiteness_infinite_cases(odometer, z2):
    verdict = mf.finiteness_semidecision(odometer)
    assert verdict.kind == "infinite"
    assert "heuristic" in verdict.evidence
    verdict = mf.finiteness_semidecision(mf.cayley_machine(z2))
    assert verdict.kind == "infinite"
    assert "not bireversible" in verdict.evidence


def test_finiteness_unknown_at_short_horizon(odometer):
    verdict = mf.finiteness_semidecision(odometer, horizon=1)
    assert verdict.kind == "unknown"


def test_zeta_odometer(odometer):
    assert mf.zeta(odometer, 254) == mf.ZetaValue(0, True)
    assert mf.zeta(odometer, 255) == mf.ZetaValue(1, False)
    assert mf.zeta(odometer, 4349) == mf.ZetaValue(2, False)


def test_zeta_monotone(odometer):
    values = [mf.zeta(odometer, n).value for n in range(0, 10**6, 37777)]
    assert values == sorted(values)


def test_zeta_errors(identity2):
    with pytest.raises(ValueError):
        mf.zeta(identity2, 100)
    machine = mf.MealyMachine.from_tables(("p",), ("0", "1"), [[0, 0]], [[0, 0]])
    with pytest.raises(mf.NotInvertible):
        mf.zeta(machine, 100)


def test_decide_bounded_yes(z2):
    machine = mf.dual(mf.identity_machine_of(z2))
    verdict = mf.decide_bounded_schreier(machine, 2)
    assert verdict.kind == "yes"
    assert verdict.component_size == 2
    assert verdict.prefix == "e" and verdict.period == "e"
    assert mf.verify_bounded_witness(machine, verdict, periods=4)


def test_decide_bounded_no(odometer, grigorchuk):
    verdict = mf.decide_bounded_schreier(odometer, 3)
    assert verdict.kind == "no"
    assert verdict.level == 2 and verdict.chi_at_level == 4
    verdict = mf.decide_bounded_schreier(grigorchuk, 4, horizon=8)
    assert verdict.kind == "no"
    assert verdict.level == 3 and verdict.chi_at_level == 8


def test_decide_bounded_identity(identity2):
    verdict = mf.decide_bounded_schreier(identity2, 1)
    assert verdict.kind == "yes"
    assert verdict.component_size == 1
    assert mf.verify_bounded_witness(identity2, verdict)


def test_decide_bounded_exhausted(grigorchuk):
    verdict = mf.decide_bounded_schreier(grigorchuk, 8, horizon=2)
    assert verdict.kind == "exhausted"
    assert verdict.horizon == 2
    assert verdict.best_size == 4
    assert verdict.completion_bound == 4096


def test_decide_bounded_budget(odometer):
    with pytest.raises(mf.BudgetExceeded):
        mf.decide_bounded_schreier(odometer, 10**6, horizon=30, budget=100)


def test_verify_witness_rejects_other_verdicts(odometer):
    verdict = mf.decide_bounded_schreier(odometer, 3)
    with pytest.raises(ValueError):
        mf.verify_bounded_witness(odometer, verdict)


def test_torsion_identity_flavour(z2):
    machine = mf.enriched_dual(mf.identity_machine_of(z2)).machine
    witnesses = mf.torsion_search(machine, 1, 8)
    assert [(w.word, w.index, w.period) for w in witnesses] == [
        (("e",), 1, 1),
        (("a",), 1, 1),
        (("e^-1",), 1, 1),
        (("a^-1",), 1, 1),
    ]
    assert [mf.torsion_bound_ell(machine, w) for w in witnesses] == [2, 2, 2, 2]


def test_torsion_palindrome_flavour(z3):
    machine = mf.enriched_dual(mf.palindrome_machine(z3)).machine
    witnesses = mf.torsion_search(machine, 1, 8)
    assert len(witnesses) == len(machine.alphabet)
    for w in witnesses:
        assert (w.index, w.period) == (1, 2)
        assert mf.torsion_bound_ell(machine, w) == 9


def test_torsion_witnesses_reverified_by_depth_probes(z2):
    machine = mf.enriched_dual(mf.identity_machine_of(z2)).machine
    dual_machine = mf.dual(machine)
    for w in mf.torsion_search(machine, 1, 8):
        low = w.word * w.index
        high = w.word * (w.index + w.period)
        for depth in (1, 2, 3):
            for v in itertools.product(machine.states, repeat=depth):
                assert mf.act_output(dual_machine, low, v) == mf.act_output(
                    dual_machine, high, v
                )


def test_torsion_free_word_has_no_witness(odometer):
    assert mf.torsion_search(odometer, 2, 4) == []


def test_periodic_stabilizer_scan(grigorchuk):
    entries = mf.periodic_stabilizer_scan(grigorchuk, 1, 1, depth=4)
    table = {(e.period_word, e.state_word): e.nontrivial for e in entries}
    assert len(entries) == 12
    assert table[("0", ("d",))] is True
    assert table[("0", ("id",))] is False
    assert table[("1", ("b",))] is True
    assert table[("1", ("c",))] is True
    assert table[("1", ("d",))] is True
    assert ("0", ("b",)) not in table
    assert ("0", ("a",)) not in table
    assert table[("1", ("b^-1",))] is True
