import numpy as np
import pytest

from jsdseg.qmath import born_distribution, pauli
from jsdseg.segment import estimate_changepoint
from jsdseg.scenarios import SCENARIOS, build_scenario, list_scenarios, state_pair

import oracles


def test_catalog_size_and_order():
    names = list(SCENARIOS)
    assert len(names) == 21
    assert names[0] == "q1_xyz_pure"
    assert [sc.name for sc in list_scenarios()] == names


@pytest.mark.parametrize("name", list(SCENARIOS))
def test_geometry(name):
    sc = build_scenario(name)
    assert sc.n == 2000
    assert sum(l for _, l in sc.schedule.segments) == 2000
    assert sc.true_changepoint == 1001
    for obs in sc.program.catalog:
        obs.check()


@pytest.mark.parametrize("alias, name", [("fig1", "q1_xyz_pure"), ("fig2a", "q1_x_pure"),
                                         ("fig3", "q1_xyz_mixed"), ("fig4b", "q1_y_mixed"),
                                         ("fig5", "q2_xxyyzz"), ("fig6b", "q2_xy")])
def test_aliases(alias, name):
    assert build_scenario(alias).name == name
    assert SCENARIOS[name] == alias


def test_unknown_name_lists_valid():
    with pytest.raises(ValueError, match="q1_xyz_pure"):
        build_scenario("fig9")


@pytest.mark.parametrize("name, expected", [
    ("q1_x_pure", ()),
    ("q1_xyz_pure", ("Y", "Z")),
    ("q1_y_mixed", ()),
    # the X distributions of |0><0| and I/2 coincide as well
    ("q1_x_mixed", ()),
    ("q1_xyz_mixed", ("Z",)),
    ("q2_xxyyzz", ("X⊗X", "Y⊗Y")),
    ("q2_xx", ("X⊗X",)),
    ("q2_yy", ("Y⊗Y",)),
    # only X(x)X and Y(x)Y separate |00> from the Bell state
    ("q2_xy", ()), ("q2_xz", ()), ("q2_yz", ()), ("q2_zz", ()),
])
def test_distinguishing_sets(name, expected):
    assert build_scenario(name).distinguishing_observables == expected


def test_distinguishing_matches_oracle():
    for sc in list_scenarios():
        rho = [s.rho for s, _ in sc.schedule.segments]
        for obs in sc.program.catalog:
            letters = obs.label.replace("⊗", "")
            d = [np.array(oracles.born_pauli_string(r, letters)) for r in rho]
            differs = np.abs(d[0] - d[1]).sum() > 1e-9
            assert differs == (obs.label in sc.distinguishing_observables), (sc.name, obs.label)


def test_born_annotations():
    sc = build_scenario("q2_xxyyzz")
    # P(+1) in alphabet order (-1, +1)
    assert [p[1] for p in sc.born["X⊗X"]] == pytest.approx([0.5, 1.0])
    assert [p[1] for p in sc.born["Y⊗Y"]] == pytest.approx([0.5, 0.0])
    assert [p[1] for p in sc.born["Z⊗Z"]] == pytest.approx([1.0, 1.0])


def test_pure_pair_x_uniform():
    for rho in state_pair("pure"):
        np.testing.assert_allclose(born_distribution(rho, pauli("X")), [0.5, 0.5], atol=1e-15)


def test_unknown_pair():
    with pytest.raises(ValueError):
        state_pair("thermal")


@pytest.mark.parametrize("name", [n for n in SCENARIOS if len(build_scenario(n).program.catalog) > 1])
def test_success_iff_catalog_distinguishes(name):
    sc = build_scenario(name)
    est = np.array([estimate_changepoint(sc.generate(s)).estimated_changepoint for s in range(100)])
    med = np.median(np.abs(est - sc.true_changepoint))
    assert (med <= 50) == sc.detectable
