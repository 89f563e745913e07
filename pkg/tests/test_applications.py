import random
from fractions import Fraction
from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_graph
from hbarperfect.applications.delta import delta_bounds
from hbarperfect.applications.entanglement import (bell_diagonal_classify, bipartitions, check_density,
                                                    entanglement_estimates, lambda_gap_max, multipartite_criterion,
                                                    nonlinear_witness, qutrit_cover_witness, taxicab_distance)
from hbarperfect.applications.ground import ground_bound, optimal_weights
from hbarperfect.applications.states import (GHZ_STABILIZERS, S5_STRINGS, bell_diagonal, bell_state, chain_strings,
                                             dm, ghz_diagonal, ghz_state, qutrit_family, rho_v,
                                             unfaithful_qutrit_state)
from hbarperfect.applications.uncertainty import uncertainty_lp
from hbarperfect.errors import (BadDimension, BudgetExceeded, DomainError, GraphMismatch, Infeasible,
                                NonCommutingStabilizers, NotDistribution, SizeOverflow)
from hbarperfect.graph import anticycle, complete, cycle
from hbarperfect.stab import alpha_value

XYZ = ["X", "Y", "Z"]


def random_density(d, rng, rank=None):
    a = rng.normal(size=(d, rank or d)) + 1j * rng.normal(size=(d, rank or d))
    r = a @ a.conj().T
    return r / np.trace(r).real


# density checks


def test_check_density_rejects():
    with pytest.raises(BadDimension):
        check_density(np.eye(3) / 3, 4)
    with pytest.raises(BadDimension):
        check_density(np.diag([1.5, -0.5]))
    with pytest.raises(BadDimension):
        check_density(np.array([[0.5, 0.1], [0.0, 0.5]]))


# bipartite witness


def test_bell_state_witness():
    rep = nonlinear_witness(dm(bell_state(1)), XYZ, XYZ)
    assert np.allclose(rep.point, [1, 1, 1])
    assert rep.value == pytest.approx(3)
    assert rep.threshold == 1 and rep.threshold_src == "alpha"
    assert rep.verdict == "entangled" and rep.violated


def test_mixed_state_witness():
    rep = nonlinear_witness(np.eye(4) / 4, XYZ, XYZ)
    assert np.allclose(rep.point, 0) and rep.verdict == "undecided"


def test_witness_from_expectations():
    rep = nonlinear_witness(None, XYZ, XYZ, expectations=[0.5, -0.3, 0.1])
    assert rep.point == [0.5, 0.3, 0.1] and rep.verdict == "undecided"


def test_witness_graph_mismatch():
    with pytest.raises(GraphMismatch):
        nonlinear_witness(np.eye(4) / 4, ["X", "Z"], ["X", "X"])


@pytest.mark.parametrize("v,verdict", [(0.55, "undecided"), (0.59, "undecided"), (0.61, "entangled"),
                                       (0.8, "entangled")])
def test_rho_v_threshold(v, verdict):
    rep = nonlinear_witness(rho_v(v), S5_STRINGS, S5_STRINGS)
    assert rep.threshold == 1
    assert rep.value == pytest.approx(5 * v / 3, abs=1e-9)
    assert rep.verdict == verdict


def test_witness_sound_on_separable_states():
    rng = np.random.default_rng(51)
    for _ in range(200):
        k = rng.integers(1, 4)
        ps = rng.dirichlet(np.ones(k))
        rho = sum(p * np.kron(random_density(2, rng, 1), random_density(2, rng, 1)) for p in ps)
        assert nonlinear_witness(rho, XYZ, XYZ).verdict == "undecided"


# Bell diagonal states


def test_bell_diagonal_examples():
    r = bell_diagonal_classify([1, 0, 0, 0])
    assert r["entangled"] and np.allclose(r["point"], [1, 1, 1])
    r = bell_diagonal_classify([0.25] * 4)
    assert not r["entangled"] and np.allclose(r["point"], 0) and r["inside"]
    r = bell_diagonal_classify([0.6, 0.4, 0, 0])
    assert r["entangled"] and not r["inside"] and r["agree"]
    assert np.allclose(r["point"], [0.2, 0.2, 1.0])
    with pytest.raises(NotDistribution):
        bell_diagonal_classify([0.5, 0.6, 0, 0])


def test_bell_point_matches_state():
    p = [0.1, 0.2, 0.3, 0.4]
    rep = nonlinear_witness(bell_diagonal(p), XYZ, XYZ)
    assert np.allclose(rep.point, bell_diagonal_classify(p)["point"])


def test_bell_classifier_agreement():
    rng = np.random.default_rng(52)
    for p in rng.dirichlet(np.ones(4), size=10_000):
        r = bell_diagonal_classify(p)
        assert r["agree"]
        assert r["inside"] == (not r["entangled"]) or abs(max(p) - 0.5) < 1e-9


# qutrits


@pytest.mark.parametrize("p", [0.0, 0.2, 0.4, 0.5, 0.8, 1.0])
def test_qutrit_family(p):
    res = qutrit_cover_witness(qutrit_family(p))
    assert res["lhs"] == pytest.approx(2 / 3 * (2 * abs(2 - 5 * p) - 5 * p + 8), abs=1e-9)
    assert res["verdict"] == ("undecided" if p == 0.4 else "entangled")


def test_qutrit_mixed_and_unfaithful():
    assert qutrit_cover_witness(np.eye(9) / 9)["lhs"] == pytest.approx(0, abs=1e-12)
    # normalized printed amplitudes; the three-digit rounding shifts the last digits
    res = qutrit_cover_witness(unfaithful_qutrit_state())
    assert res["lhs"] == pytest.approx(4.846082, abs=1e-6)
    assert res["verdict"] == "entangled"


# multipartite


def test_bipartitions():
    assert bipartitions([[0], [1], [2]]) == [[0], [1], [2]]
    assert len(bipartitions([[0], [1], [2], [3]])) == 7


def test_ghz_criterion():
    crit = multipartite_criterion(GHZ_STABILIZERS)
    assert crit.thresholds == [3, 3, 3]
    assert crit.biseparable_bound == 3
    ev = crit.evaluate(dm(ghz_state(1)))
    assert ev["value"] == pytest.approx(7)
    assert ev["genuinely_entangled"]
    assert crit.max_value == 7


def test_ghz_weighted_bounds():
    crit = multipartite_criterion(GHZ_STABILIZERS, w=[0, 1, 1, 2, 0, 0, 0])
    assert crit.max_value == 4
    assert (crit.biseparable_bound, crit.fully_separable_bound) == (3, 2)


def test_threshold_formula():
    rng = random.Random(53)
    for _ in range(10):
        w = [rng.randint(0, 4) for _ in range(7)]
        if not any(w):
            continue
        crit = multipartite_criterion(GHZ_STABILIZERS, w=w)
        t = crit.thresholds[crit.bipartitions.index([0])]
        assert t == w[2] + max(w[0] + w[1], w[3] + w[6], w[4] + w[5])


def test_thresholds_recompute():
    crit = multipartite_criterion(GHZ_STABILIZERS, w=[1, 2, 1, 1, 3, 1, 2])
    for g, t in zip(crit.graphs, crit.thresholds):
        assert t == float(alpha_value(g, crit.weights))


def test_multipartite_errors():
    with pytest.raises(NonCommutingStabilizers):
        multipartite_criterion(["XI", "ZI"])
    with pytest.raises(BudgetExceeded):
        multipartite_criterion(["ZZIIII", "IZZIII"])


def test_ghz_estimates():
    crit = multipartite_criterion(GHZ_STABILIZERS)
    gap, gaps = lambda_gap_max(crit.operators())
    assert gap == pytest.approx(8) and np.allclose(gaps, 8)
    est = entanglement_estimates(crit, dm(ghz_state(1)))
    assert est["d_T"] == pytest.approx(4, abs=1e-7)
    assert est["E_T_lower"] == pytest.approx(0.5, abs=1e-7)
    assert est["E_HS_lower"] == pytest.approx(0.3286, abs=1e-4)


def test_estimates_vanish_on_hull():
    crit = multipartite_criterion(GHZ_STABILIZERS)
    # GHZ-diagonal mixture with a biseparable-bound point
    rho = ghz_diagonal([0.5, 0.5, 0, 0, 0, 0, 0, 0])
    est = entanglement_estimates(crit, rho)
    assert est["d_T"] == pytest.approx(0, abs=1e-7)
    assert est["d_HS"] == pytest.approx(0, abs=1e-6)


def test_taxicab_distance_simple():
    V = np.array([[0, 0], [1, 0], [0, 1]], dtype=float)
    assert taxicab_distance([1, 1], V) == pytest.approx(1)
    assert taxicab_distance([0.2, 0.3], V) == pytest.approx(0)


# delta


def test_delta_examples():
    d = delta_bounds(cycle(5), refine=True)
    assert d.lower == Fraction(2, 5)
    assert d.upper == pytest.approx(1 / sqrt(5), abs=1e-6)
    assert d.transitive_exact == pytest.approx(0.4, abs=1e-5)
    d = delta_bounds(complete(4))
    assert d.lower == Fraction(1, 4) and d.upper == pytest.approx(0.25, abs=1e-6)
    assert d.transitive_exact == pytest.approx(0.25, abs=1e-5)
    d = delta_bounds(anticycle(7))
    assert d.lower == Fraction(2, 7)
    assert d.upper == pytest.approx(0.30142, abs=1e-5)
    assert d.lower <= d.transitive_exact <= d.upper + 1e-6
    with pytest.raises(SizeOverflow):
        delta_bounds(cycle(11))


def test_delta_ordering():
    rng = random.Random(54)
    for _ in range(10):
        g = random_graph(rng, rng.randint(2, 6))
        d = delta_bounds(g, refine=True, transitive=False)
        assert float(d.lower) <= d.upper + 1e-6
        assert d.refined_upper <= d.upper + 1e-5
        assert float(d.lower) <= d.refined_upper + 1e-5


# uncertainty LP


def test_uncertainty_examples():
    r = uncertainty_lp(complete(3), 0, [None, 0.5, 0.5])
    assert r["min_variance"] == 1 and r["certified"]
    assert uncertainty_lp(complete(3), 0, [None, 1, 1])["min_variance"] == 0
    with pytest.raises(Infeasible):
        uncertainty_lp(complete(3), 0, [None, 0, 0])
    assert uncertainty_lp(cycle(5), 0, [None, 0.9, 0.95, 0.85, 0.9])["min_variance"] == Fraction(1, 10)
    with pytest.raises(DomainError):
        uncertainty_lp(complete(3), 3, [None] * 3)


def test_uncertainty_no_caps_is_zero():
    rng = random.Random(55)
    for _ in range(10):
        g = random_graph(rng, rng.randint(2, 6))
        assert uncertainty_lp(g, 0, [None] * g.n)["min_variance"] == 0


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(0, 1, max_denominator=20), min_size=4, max_size=4),
       st.lists(st.fractions(0, 1, max_denominator=20), min_size=4, max_size=4))
def test_uncertainty_monotone_in_caps(c1, c2):
    g = cycle(5)
    lo = [None] + [min(a, b) for a, b in zip(c1, c2)]
    hi = [None] + [max(a, b) for a, b in zip(c1, c2)]
    try:
        tight = uncertainty_lp(g, 0, lo)["min_variance"]
    except Infeasible:
        return
    assert uncertainty_lp(g, 0, hi)["min_variance"] <= tight


# ground-state bounds


def test_chain_h2_gap():
    res = ground_bound([1] * 5, chain_strings(2))
    assert res.scale_src == "alpha"
    assert res.exact_energy - res.bound == pytest.approx(0.084594, abs=1e-4)


def test_chain_h2_tilde_hand_weights():
    res = ground_bound([1] * 6, chain_strings(2, yy=True), w=[2, 2, 1, 1, 1, 1])
    assert res.objective == pytest.approx(5)
    assert res.scale == pytest.approx(3)
    assert res.bound == pytest.approx(-sqrt(15))
    assert res.exact_energy == pytest.approx(-3.722935, abs=1e-6)


def test_single_string():
    res = ground_bound([1], ["Z"])
    assert res.bound == pytest.approx(-1) and res.exact_energy == pytest.approx(-1)


def test_optimal_weights_feasible():
    g = cycle(5)
    w, f = optimal_weights([1, 2, 1, 1, 3], g)
    assert float(alpha_value(g, w.tolist())) <= 1 + 1e-8
    assert f == pytest.approx(np.sum(np.array([1, 2, 1, 1, 3]) ** 2 / w))


def test_ground_bound_below_exact():
    rng = random.Random(56)
    nrng = np.random.default_rng(56)
    letters = "IXYZ"
    for _ in range(12):
        ell = rng.randint(1, 3)
        k = rng.randint(1, min(5, 4 ** ell - 1))
        strings = set()
        while len(strings) < k:
            s = "".join(rng.choice(letters) for _ in range(ell))
            if s != "I" * ell:
                strings.add(s)
        strings = sorted(strings)
        a = nrng.normal(size=k)
        res = ground_bound(a, strings)
        assert res.bound <= res.exact_energy + 1e-9


def test_ground_bound_errors():
    with pytest.raises(DomainError):
        ground_bound([1, 2], ["Z"])
    with pytest.raises(DomainError):
        ground_bound([1], ["Z"], w=[0])
