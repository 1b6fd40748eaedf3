import math

import pytest

import qnetcap


def test_bounds():
    assert qnetcap.h2(0.5) == pytest.approx(1.0)
    assert qnetcap.ad_rci(0.5) == pytest.approx(0.271553, abs=1e-6)
    assert qnetcap.ad_squashed(0.5) == pytest.approx(0.410870, abs=1e-6)
    assert qnetcap.tl_rci(0.9, 0.01) <= qnetcap.tl_ree(0.9, 0.01)
    assert qnetcap.plob_pure_loss(0.5) == pytest.approx(1.0)


def test_composition():
    assert qnetcap.compose_ad([0.1, 0.2, 0.3]) == pytest.approx(0.496)
    tau, nbar = qnetcap.compose_tl([(0.8, 0.1), (0.5, 0.2)])
    assert tau == pytest.approx(0.4)
    assert nbar == pytest.approx(0.25)


def test_routing():
    edges = [(0, 1, 2.0), (1, 3, 4.0), (0, 2, 5.0), (2, 3, 6.0)]
    assert qnetcap.max_flow(4, edges, 0, 3) == pytest.approx(7.0)
    value, path = qnetcap.widest_path(4, edges, 0, 3)
    assert value == 5.0
    assert path == [0, 2, 3]


def test_lattice_constants():
    assert qnetcap.delta("triangular6") == 18
    assert qnetcap.omega("manhattan8") == (224, 25)
    assert qnetcap.min_nodal_density(1.0, "manhattan8") == pytest.approx(2.0)


def test_threshold():
    r = qnetcap.threshold({"cell": "manhattan8", "nbar_B": 0.0}, target=1e-2)
    assert r["bulk"]["bracket"][0] == pytest.approx(183.2, abs=0.05)
    with pytest.raises(qnetcap.NotAttainable):
        qnetcap.threshold({"cell": "triangular6", "family": "qubit"}, target=10.0)


def test_generate_analyze():
    net = qnetcap.generate("triangular6", 2, 50.0)
    assert qnetcap.validate(net) == []
    report = qnetcap.analyze(net)
    assert report["flooding"]["lower"] <= report["min_neighbourhood"]["lower"] + 1e-12
    del net["users"]
    assert ("users", "required") in qnetcap.validate(net)
    with pytest.raises(qnetcap.ValidationError):
        qnetcap.analyze(net)


def test_qkd():
    assert qnetcap.theta_ph() == pytest.approx(math.pi * 9 * 1600 / 5e6)
    assert qnetcap.theta_el() == pytest.approx(1.44983e-3, rel=1e-5)
    assert qnetcap.receiver_noise("table1-heterodyne-tlo", 0.01) > qnetcap.receiver_noise(
        "table1-heterodyne-llo", 0.01
    )


def test_sweep():
    csv = qnetcap.sweep(
        {"variable": "edgeLength", "range": {"start": 10, "stop": 20, "steps": 2}, "wrn": {}}
    )
    lines = [l for l in csv.splitlines() if not l.startswith("#")]
    assert len(lines) == 3
