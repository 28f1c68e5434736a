import numpy as np
import pytest

from conftest import coupling_from_pairs, system_from_B
from suncontrol import criteria
from suncontrol.algebra import cartan_matrix
from suncontrol.criteria import (
    CONTROLLABLE,
    COR2_FUND_REGULAR,
    DOES_NOT_FIRE,
    FIRES,
    INAPPLICABLE,
    INCONCLUSIVE,
    NEC_CONNECTED,
    RANK_UPGRADE_NOTE,
    THM1_REGULAR,
    THM2_BREGULAR,
    THM3_BR_CONNECTED,
    THM4_B0,
    THM5_UNION,
    THM6_D0,
    UNCONTROLLABLE,
    analyze_system,
    check_necessary,
    evaluate,
    thm_b_regular,
    thm_br_connected,
    thm_regular,
    thm_singular_b0,
    thm_singular_d0,
    thm_singular_union,
    union_connected,
)
from suncontrol.errors import OracleContradiction
from suncontrol.generators import parse_gen_spec, system_rngs
from suncontrol.oracle import BracketClosure
from suncontrol.system import ControlSystem

TRIPLE = (-1.0, 0.0, 1.0)
DISTINCT = (-4 / 3, -1 / 3, 5 / 3)


def _an(energies, pairs, values=1.0, diag=None):
    H = coupling_from_pairs(len(energies), pairs, values)
    if diag is not None:
        H = H + np.diag(diag)
    return analyze_system(ControlSystem.from_hamiltonians(energies, H))


def _harmonic(n, mu, b, real=False):
    B = np.zeros((n, n), dtype=complex)
    for k in range(n - 1):
        v = b[k] if real else 1j * b[k]
        B[k, k + 1], B[k + 1, k] = v, (-np.conj(v) if real else v)
    return system_from_B(mu * np.arange(n), B)


def test_check_necessary_examples():
    r = check_necessary(_an((-1.1, -0.3, 0.5, 1.4), [(0, 1), (2, 3)]))
    assert r.outcome == FIRES and r.witness == "components {1,2} {3,4}"
    assert check_necessary(_an(DISTINCT, [(0, 1), (1, 2)])).outcome == DOES_NOT_FIRE
    assert check_necessary(_an((-0.5, 0.5), [])).outcome == FIRES


def test_thm_regular_examples():
    assert thm_regular(_an(DISTINCT, [(0, 1), (1, 2)])).fired
    assert thm_regular(_an(DISTINCT, [(0, 1), (0, 2), (1, 2)])).fired
    r = thm_regular(_an(TRIPLE, [(0, 1), (1, 2)]))
    assert r.outcome == DOES_NOT_FIRE and "(1,2) and (2,3)" in r.witness
    assert not thm_regular(_an(DISTINCT, [(0, 1)])).fired


def test_thm_b_regular_examples():
    assert thm_b_regular(_an(TRIPLE, [(0, 1), (0, 2)])).fired
    assert not thm_b_regular(_an(TRIPLE, [(0, 1), (1, 2)])).fired


def test_thm_br_connected_examples():
    an = _an((-1.3, -0.1, 0.35, 1.6), [(0, 1), (1, 2), (2, 3)])
    r = thm_br_connected(an)
    assert r.fired and r.sub[0].id == COR2_FUND_REGULAR and r.sub[0].fired
    r = thm_br_connected(_an(TRIPLE, [(0, 1), (0, 2), (1, 2)]))
    assert r.outcome == DOES_NOT_FIRE and "{2}" in r.witness
    # equispaced N=4 path: every touched value collides
    an = _an((0, 1, 2, 3), [(0, 1), (1, 2), (2, 3)])
    assert an.table.theta_plus_A == () and not thm_br_connected(an).fired


def test_thm2_without_thm3_counterexample():
    # values 1 and 2 on Gamma+ are distinct, but 1 also belongs to the untouched (2,3)
    an = _an(TRIPLE, [(0, 1), (0, 2)])
    assert thm_b_regular(an).fired
    assert not thm_br_connected(an).fired
    assert evaluate(an.sys, with_oracle=True).oracle_dimension == 8


def test_thm4_examples():
    # B0 = 0
    assert thm_singular_b0(_an((0, 1, 2, 3), [(0, 1), (1, 2), (2, 3)])).outcome == DOES_NOT_FIRE
    # equispaced path, B0 = i diag(1, 0, -2, 1): fundamentals 1, 2, -3
    B = 1j * coupling_from_pairs(4, [(0, 1), (1, 2), (2, 3)]) + np.diag([1j, 0, -2j, 1j])
    an = analyze_system(system_from_B((0, 1, 2, 3), B))
    fund = [an.table.values_at_B0[an.table.position(k, k + 1)] for k in range(3)]
    np.testing.assert_allclose(fund, [1, 2, -3])
    r = thm_singular_b0(an)
    assert r.fired and r.witness == "B0 is C-regular"
    assert thm_singular_b0(_an((0, 0, 1), [(0, 1), (1, 2)], diag=[1, 0, -1])).outcome == INAPPLICABLE


def test_thm4_excludes_b0_proportional_to_drift():
    e = np.array([-1.0, 0.2, 0.8])
    B = 1j * coupling_from_pairs(3, [(0, 1), (1, 2)]) + np.diag(1j * 0.5 * e)
    r = thm_singular_b0(analyze_system(system_from_B(e, B)))
    assert r.outcome == DOES_NOT_FIRE and "proportional" in r.witness


def test_thm4_regular_b0():
    B = 1j * coupling_from_pairs(3, [(0, 1), (1, 2)]) + np.diag([1j, 3j, -4j])
    r = thm_singular_b0(analyze_system(system_from_B(TRIPLE, B)))
    assert r.fired and r.witness == "B0 is regular"


def test_union_connected_examples():
    assert union_connected(3, [(0, 1)], [(1, 2)])[0]
    assert not union_connected(3, [], [])[0]
    ok, comps = union_connected(4, [(0, 1)], [(2, 3)])
    assert not ok and comps == [[0, 1], [2, 3]]


def test_thm5_on_system():
    # Theta+_A = {(1,3)}; B0 = i diag(0, 1, -1) gives values -1, 1, 2, so only (2,3) is unique
    B = 1j * coupling_from_pairs(3, [(0, 1), (0, 2), (1, 2)]) + np.diag([0, 1j, -1j])
    an = analyze_system(system_from_B(TRIPLE, B))
    assert an.table.pairs(an.table.theta_plus_A) == [(0, 2)]
    assert an.table.pairs(an.table.theta_plus_B) == [(1, 2)]
    assert thm_singular_union(an).fired
    assert not thm_br_connected(an).fired


def test_thm6_examples():
    an = analyze_system(_harmonic(3, 0.8, [1.0, 1.0]))
    assert thm_singular_d0(an).outcome == DOES_NOT_FIRE
    an = analyze_system(_harmonic(3, 0.8, [1.0, 2.0]))
    mu = 0.8
    np.testing.assert_allclose(an.brackets.d, [-2 * mu, -6 * mu, 8 * mu], atol=1e-12)
    r = thm_singular_d0(an)
    assert r.fired and r.witness == "D0 is regular"
    diag_only = system_from_B(DISTINCT, cartan_matrix(0, 3))
    assert thm_singular_d0(analyze_system(diag_only)).outcome == INAPPLICABLE
    assert thm_singular_d0(_an((0, 0, 1), [(0, 1), (1, 2)])).outcome == INAPPLICABLE


def test_harmonic_unequal_is_controllable_only_via_thm6():
    v = evaluate(_harmonic(3, 0.8, [1.0, 2.0]), with_oracle=True)
    assert v.decision == CONTROLLABLE
    assert [r.id for r in v.fired] == [THM6_D0]
    assert v.oracle_dimension == 8


def test_evaluate_examples():
    e = np.array([-1.3, -0.1, 0.35, 1.6])
    v = evaluate(ControlSystem.from_hamiltonians(e, np.ones((4, 4)) - np.eye(4)), with_oracle=True)
    assert v.decision == CONTROLLABLE and v.result(THM1_REGULAR).fired and v.oracle_dimension == 15
    assert v.upgraded_decision is None

    v = evaluate(_harmonic(4, 0.5, [1.0, 1.0, 1.0], real=True), with_oracle=True)
    assert v.decision == INCONCLUSIVE
    assert v.upgrade_basis == RANK_UPGRADE_NOTE
    assert v.upgraded_decision == (CONTROLLABLE if v.oracle_dimension == 15 else UNCONTROLLABLE)

    v = evaluate(ControlSystem.from_hamiltonians(e, coupling_from_pairs(4, [(0, 1), (2, 3)])), with_oracle=True)
    assert v.decision == UNCONTROLLABLE and v.oracle_dimension < 15
    assert v.result(NEC_CONNECTED).fired


def test_evaluate_without_oracle_never_upgrades():
    v = evaluate(_harmonic(4, 0.5, [1.0, 1.0, 1.0], real=True))
    assert v.decision == INCONCLUSIVE and v.upgraded_decision is None and v.oracle_dimension is None


def test_all_criteria_always_reported():
    v = evaluate(ControlSystem.from_hamiltonians(DISTINCT, np.ones((3, 3))))
    assert [r.id for r in v.results] == [NEC_CONNECTED, THM1_REGULAR, THM2_BREGULAR, THM3_BR_CONNECTED,
                                         THM4_B0, THM5_UNION, THM6_D0]


def test_oracle_contradiction(monkeypatch):
    sys = ControlSystem.from_hamiltonians(DISTINCT, np.ones((3, 3)) - np.eye(3))
    monkeypatch.setattr(criteria, "lie_closure",
                        lambda s, backend=None: BracketClosure(3, 5, np.zeros((5, 8)), 1))
    with pytest.raises(OracleContradiction):
        evaluate(sys, with_oracle=True)
    split = ControlSystem.from_hamiltonians((-1.1, -0.3, 0.5, 1.4), coupling_from_pairs(4, [(0, 1), (2, 3)]))
    monkeypatch.setattr(criteria, "lie_closure",
                        lambda s, backend=None: BracketClosure(4, 15, np.zeros((15, 15)), 1))
    with pytest.raises(OracleContradiction):
        evaluate(split, with_oracle=True)


def _collides_outside(t):
    gamma = set(t.gamma_plus)
    rest = [k for k in range(len(t.roots)) if k not in gamma]
    vals = t.values_at_drift
    return any(abs(vals[g] - vals[r]) <= t.drift_tol for g in gamma for r in rest)


@pytest.mark.parametrize("gen", ["generic", "resonant:2", "equispaced", "dipole"])
def test_monotonicity(gen):
    make = parse_gen_spec(gen)
    for n in (3, 4, 5):
        for r in system_rngs(n, 150):
            an = analyze_system(make(n, r))
            t1, t2, t3 = thm_regular(an), thm_b_regular(an), thm_br_connected(an)
            if t1.fired:
                assert t2.fired
            if t2.fired and not _collides_outside(an.table):
                assert t3.fired
