from pathlib import Path

import pytest
from sklearn.base import clone

from conftest import make_spec
from wsbn import BoundedExplorer, RBNCoverability, StaticCoverability
from wsbn.estimators import NotFittedError, check_spec, check_targets
from wsbn.order import Verdict
from wsbn.process import ProcessConfig
from wsbn.topology import PathBounded

MODELS = Path(__file__).resolve().parent.parent / "models"


def test_params_roundtrip():
    est = StaticCoverability(topology="path:2", max_iterations=5)
    assert est.get_params() == {"topology": "path:2", "max_iterations": 5}
    est.set_params(topology="clique")
    assert clone(est).topology == "clique"


def test_predict_before_fit():
    with pytest.raises(NotFittedError):
        RBNCoverability().predict(["q"])


def test_rbn_estimator(counter, receive_only):
    est = RBNCoverability().fit(counter)
    assert est.unlocked_ == frozenset({"a"})
    assert est.predict(["q0:[2]", ProcessConfig("q0", (7,))]) == [Verdict.COVERABLE, Verdict.COVERABLE]
    assert RBNCoverability().fit(receive_only).predict("q'") == [Verdict.UNCOVERABLE]


def test_rbn_estimator_limit():
    # the broadcast needs a positive counter, so saturation has real work
    spec = make_spec([("q0", "!!a", "q0", [-1]), ("q0", "??a", "q0", [1])], ["q0"], ["q0"], dim=1)
    est = RBNCoverability(max_iterations=0).fit(spec)
    assert not est.saturated_
    assert est.predict(["q0:[1]"]) == [Verdict.LIMIT_EXCEEDED]
    assert RBNCoverability().fit(spec).predict(["q0:[1]"]) == [Verdict.UNCOVERABLE]


def test_static_estimator(sender_receiver):
    est = StaticCoverability().fit(sender_receiver)
    assert est.predict(["r1", "b1"]) == [Verdict.COVERABLE, Verdict.COVERABLE]
    assert all(r.exact for r in est.results_)
    assert StaticCoverability(PathBounded(0)).fit(sender_receiver).predict(["r1"]) == [Verdict.UNCOVERABLE]


def test_static_fixed_from_model_file():
    est = StaticCoverability("fixed").fit(MODELS / "sender_receiver.yaml")
    assert est.predict(["r1"]) == [Verdict.COVERABLE]
    with pytest.raises(ValueError):
        StaticCoverability("fixed").fit(est.spec_)


def test_explorer():
    est = BoundedExplorer(max_nodes=2, max_counter=3, max_depth=4).fit(str(MODELS / "counter.yaml"))
    assert est.predict(["q0:[2]", "q0:[9]"]) == ["FOUND", "NOT_FOUND"]
    static = BoundedExplorer(semantics="static").fit(MODELS / "receive_only.yaml")
    assert static.predict(["q'"]) == ["NOT_FOUND EXHAUSTED"]
    with pytest.raises(ValueError):
        BoundedExplorer(semantics="gossip").fit(MODELS / "counter.yaml")


def test_validation_helpers(counter):
    with pytest.raises(TypeError):
        check_spec(42)
    with pytest.raises(TypeError):
        check_targets([3], counter)
    assert check_targets("q0", counter) == [ProcessConfig("q0", (0,))]
